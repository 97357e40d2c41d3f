// Copyright 2026 The drlqr Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRLQR_SYNTHESIS_HPP_
#define DRLQR_SYNTHESIS_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "drlqr/conic.hpp"
#include "drlqr/conic_solver.hpp"
#include "drlqr/errors.hpp"
#include "drlqr/gelbrich.hpp"
#include "drlqr/linalg.hpp"
#include "drlqr/lqr.hpp"
#include "drlqr/policy.hpp"
#include "drlqr/regret.hpp"

namespace drlqr {

struct SynthesisResult {
  RowSumPolicy policy;
  double value = 0.0;  // worst-case regret (DRRO/CE) or expected cost (DRO)
  double gamma = 0.0;
  Matrix U;
  Vector theta;  // anchor of the policy; the ball center except for DRO
  SolverStats solver_stats;
  SolveStatus solver_status = SolveStatus::optimal;
};

// Variable index maps of an assembled synthesis SDP, for extracting the
// optimizer and for direct inspection in tests. Symmetric matrix variables
// store one index per lower-triangle entry.
struct SdpLayout {
  int gamma = -1;
  int dro_rho = -1;  // DRO only; named to avoid clashing with ar_rho
  std::vector<std::vector<int>> U;                    // d x d, symmetric
  std::vector<std::vector<std::vector<int>>> Lambda;  // [t-1][row][col]
  double constant = 0.0;  // objective offset outside the conic program
};

namespace detail {

/** Symmetric basis matrix for entry (i, j) of a k x k block embedded at
 * (r0, c0) inside a size x size frame. */
inline Matrix sym_basis(int size, int r0, int c0, int i, int j) {
  Matrix e = Matrix::Zero(size, size);
  e(r0 + i, c0 + j) = 1.0;
  e(c0 + j, r0 + i) += 1.0;  // symmetric completion; doubles the diagonal
  if (i == j && r0 == c0) e(r0 + i, c0 + j) = 1.0;
  return e;
}

inline std::vector<std::vector<int>> add_symmetric_var(SdpBuilder& builder,
                                                       const std::string& name,
                                                       int d) {
  std::vector<std::vector<int>> idx(d, std::vector<int>(d, -1));
  for (int j = 0; j < d; ++j) {
    for (int i = j; i < d; ++i) {
      const int v = builder.add_var(name + "_" + std::to_string(i) +
                                    std::to_string(j));
      idx[i][j] = v;
      idx[j][i] = v;
    }
  }
  return idx;
}

inline std::vector<std::vector<int>> add_rect_var(SdpBuilder& builder,
                                                  const std::string& name,
                                                  int rows, int cols) {
  std::vector<std::vector<int>> idx(rows, std::vector<int>(cols, -1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      idx[i][j] = builder.add_var(name + "_" + std::to_string(i) +
                                  std::to_string(j));
    }
  }
  return idx;
}

inline Matrix inverse_pd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(symmetrize(m));
  if (llt.info() != Eigen::Success) {
    throw SingularMatrixError("control-cost curvature block not positive "
                              "definite");
  }
  return symmetrize(llt.solve(Matrix::Identity(m.rows(), m.cols())));
}

/**
 * Appends the per-stage Schur blocks shared by both synthesis SDPs,
 *
 *   [t M_t^{-1}, Lambda_t; Lambda_t', V_t]      >= 0,  t = 1..T-1,
 *   [M_t^{-1], Lambda_t - Hbar_t; ., W_t]       >= 0,  t = 1..T-1,
 *
 * which lift (1/t) Lambda_t' M_t Lambda_t <= V_t and
 * (Lambda_t - Hbar_t)' M_t (Lambda_t - Hbar_t) <= W_t. Also creates the
 * Lambda, V, W variables and records Lambda indices in the layout. Returns
 * the V and W index maps per stage.
 */
inline std::pair<std::vector<std::vector<std::vector<int>>>,
                 std::vector<std::vector<std::vector<int>>>>
add_stage_blocks(SdpBuilder& builder, const RiccatiTables& tables,
                 SdpLayout& layout) {
  const int m = tables.m();
  const int d = tables.d();
  std::vector<std::vector<std::vector<int>>> v_idx, w_idx;
  for (int t = 1; t < tables.T; ++t) {
    const std::string st = std::to_string(t);
    layout.Lambda.push_back(add_rect_var(builder, "Lambda_" + st, m, d));
    v_idx.push_back(add_symmetric_var(builder, "V_" + st, d));
    w_idx.push_back(add_symmetric_var(builder, "W_" + st, d));
    const Matrix minv = inverse_pd(tables.M[t]);

    const int size = m + d;
    std::vector<std::pair<int, Matrix>> terms_v, terms_w;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < d; ++b) {
        Matrix coeff = Matrix::Zero(size, size);
        coeff(a, m + b) = 1.0;
        coeff(m + b, a) = 1.0;
        terms_v.emplace_back(layout.Lambda.back()[a][b], coeff);
        terms_w.emplace_back(layout.Lambda.back()[a][b], coeff);
      }
    }
    for (int j = 0; j < d; ++j) {
      for (int i = j; i < d; ++i) {
        terms_v.emplace_back(v_idx.back()[i][j], sym_basis(size, m, m, i, j));
        terms_w.emplace_back(w_idx.back()[i][j], sym_basis(size, m, m, i, j));
      }
    }

    Matrix c0_v = Matrix::Zero(size, size);
    c0_v.topLeftCorner(m, m) = t * minv;
    builder.add_lmi(c0_v, terms_v);

    Matrix c0_w = Matrix::Zero(size, size);
    c0_w.topLeftCorner(m, m) = minv;
    c0_w.topRightCorner(m, d) = -tables.Hbar[t];
    c0_w.bottomLeftCorner(d, m) = -tables.Hbar[t].transpose();
    builder.add_lmi(c0_w, terms_w);
  }
  return {v_idx, w_idx};
}

inline void add_objective_trace_term(SdpBuilder& builder,
                                     const std::vector<std::vector<int>>& u,
                                     const Matrix& sigma_hat) {
  const int d = static_cast<int>(u.size());
  for (int j = 0; j < d; ++j) {
    builder.add_objective(u[j][j], sigma_hat(j, j));
    for (int i = j + 1; i < d; ++i) {
      builder.add_objective(u[i][j], 2.0 * sigma_hat(i, j));
    }
  }
}

inline Matrix extract_symmetric(const Vector& x,
                                const std::vector<std::vector<int>>& idx) {
  const int d = static_cast<int>(idx.size());
  Matrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out(i, j) = x[idx[i][j]];
  }
  return out;
}

inline std::vector<Matrix> extract_lambdas(const Vector& x,
                                           const SdpLayout& layout, int m,
                                           int d) {
  std::vector<Matrix> out;
  for (const auto& grid : layout.Lambda) {
    Matrix lam(m, d);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < d; ++j) lam(i, j) = x[grid[i][j]];
    }
    out.push_back(lam);
  }
  return out;
}

inline RowSumPolicy gain_only_policy(
    std::shared_ptr<const RiccatiTables> tables, const Vector& anchor) {
  RowSumPolicy p;
  p.tables = std::move(tables);
  p.anchor = anchor;
  for (int t = 1; t < p.tables->T; ++t) {
    p.Lambda.push_back(Matrix::Zero(p.tables->m(), p.tables->d()));
  }
  return p;
}

inline bool noise_feedforward_vanishes(const RiccatiTables& tables) {
  for (const Matrix& h : tables.Hbar) {
    if (h.norm() != 0.0) return false;
  }
  return true;
}

inline ConicSolution solve_or_throw(const ConicProblem& prob,
                                    const SolverOptions& opts,
                                    const std::string& what) {
  ConicSolution sol = solve_conic(prob, opts);
  if (sol.status != SolveStatus::optimal) {
    throw SolverError(what + ": solver returned " + to_string(sol.status) +
                      " after " + std::to_string(sol.stats.iterations) +
                      " iterations (pres=" +
                      std::to_string(sol.stats.primal_res) +
                      ", dres=" + std::to_string(sol.stats.dual_res) +
                      ", relgap=" + std::to_string(sol.stats.rel_gap) + ")");
  }
  return sol;
}

// Solver noise can leave a nonnegative-by-construction objective a hair
// below zero; snap values in [-1e-7, 0) back to the boundary.
inline double clamp_tiny_negative(double value) {
  return (value < 0.0 && value > -1e-7) ? 0.0 : value;
}

}  // namespace detail

/**
 * Assembles the regret-synthesis SDP
 *
 *   min gamma (delta^2 - tr Sigma_hat) + tr(U Sigma_hat)
 *   s.t. gamma I >= Hbar_0' M_0 Hbar_0 + sum_t W_t,
 *        [gamma I - sum_t V_t, gamma I; gamma I, U] >= 0,
 *        per-stage Schur blocks for V_t and W_t,
 *
 * over (Lambda_{1:T-1}, gamma, U, V_{1:T-1}, W_{1:T-1}).
 */
inline std::pair<ConicProblem, SdpLayout> build_drro_sdp(
    const RiccatiTables& tables, const GelbrichBall& ball) {
  const int d = tables.d();
  SdpBuilder builder;
  SdpLayout layout;

  layout.gamma = builder.add_var("gamma");
  layout.U = detail::add_symmetric_var(builder, "U", d);
  auto [v_idx, w_idx] = detail::add_stage_blocks(builder, tables, layout);

  builder.add_objective(layout.gamma,
                        ball.delta * ball.delta - ball.Sigma_hat.trace());
  detail::add_objective_trace_term(builder, layout.U, ball.Sigma_hat);

  // gamma I - Hbar_0' M_0 Hbar_0 - sum_t W_t >= 0.
  {
    std::vector<std::pair<int, Matrix>> terms;
    terms.emplace_back(layout.gamma, Matrix::Identity(d, d));
    for (const auto& w : w_idx) {
      for (int j = 0; j < d; ++j) {
        for (int i = j; i < d; ++i) {
          terms.emplace_back(w[i][j], -detail::sym_basis(d, 0, 0, i, j));
        }
      }
    }
    const Matrix h0 = tables.Hbar[0];
    builder.add_lmi(-symmetrize(h0.transpose() * tables.M[0] * h0), terms);
  }

  // [gamma I - sum_t V_t, gamma I; gamma I, U] >= 0.
  {
    std::vector<std::pair<int, Matrix>> terms;
    Matrix gcoef = Matrix::Zero(2 * d, 2 * d);
    gcoef.topLeftCorner(d, d) = Matrix::Identity(d, d);
    gcoef.topRightCorner(d, d) = Matrix::Identity(d, d);
    gcoef.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
    terms.emplace_back(layout.gamma, gcoef);
    for (const auto& v : v_idx) {
      for (int j = 0; j < d; ++j) {
        for (int i = j; i < d; ++i) {
          terms.emplace_back(v[i][j], -detail::sym_basis(2 * d, 0, 0, i, j));
        }
      }
    }
    for (int j = 0; j < d; ++j) {
      for (int i = j; i < d; ++i) {
        terms.emplace_back(layout.U[i][j], detail::sym_basis(2 * d, d, d, i, j));
      }
    }
    builder.add_lmi(Matrix::Zero(2 * d, 2 * d), terms);
  }

  return {builder.build(), layout};
}

/**
 * Assembles the worst-case expected cost SDP over row-sum policies,
 *
 *   min x0'S0 x0 + 2 x0'P0 mu_hat + mu_hat'N0 mu_hat + rho
 *       + gamma (delta^2 - tr Sigma_hat) + tr(U Sigma_hat)
 *   s.t. [gamma I - N0, P0'x0 + N0 mu_hat; ., rho] >= 0,
 *        gamma I - N0 >= Hbar_0' M_0 Hbar_0 + sum_t W_t,
 *        [gamma I - Gamma0 - sum_t V_t, gamma I; gamma I, U] >= 0,
 *        per-stage Schur blocks for V_t and W_t.
 *
 * The affine-in-x0 constant is returned in the layout and must be added to
 * the conic objective value.
 */
inline std::pair<ConicProblem, SdpLayout> build_dro_sdp(
    const RiccatiTables& tables, const GelbrichBall& ball, const Vector& x0) {
  const int d = tables.d();
  if (x0.size() != tables.n()) {
    throw DimensionError("initial state length mismatch");
  }
  SdpBuilder builder;
  SdpLayout layout;

  layout.gamma = builder.add_var("gamma");
  layout.dro_rho = builder.add_var("dro_rho");
  layout.U = detail::add_symmetric_var(builder, "U", d);
  auto [v_idx, w_idx] = detail::add_stage_blocks(builder, tables, layout);

  const Vector p = tables.P[0].transpose() * x0 + tables.N[0] * ball.mu_hat;
  layout.constant = x0.dot(tables.S[0] * x0) +
                    2.0 * x0.dot(tables.P[0] * ball.mu_hat) +
                    ball.mu_hat.dot(tables.N[0] * ball.mu_hat);

  builder.add_objective(layout.dro_rho, 1.0);
  builder.add_objective(layout.gamma,
                        ball.delta * ball.delta - ball.Sigma_hat.trace());
  detail::add_objective_trace_term(builder, layout.U, ball.Sigma_hat);

  // [gamma I - N0, p; p', rho] >= 0.
  {
    Matrix c0 = Matrix::Zero(d + 1, d + 1);
    c0.topLeftCorner(d, d) = -tables.N[0];
    c0.topRightCorner(d, 1) = p;
    c0.bottomLeftCorner(1, d) = p.transpose();
    Matrix gcoef = Matrix::Zero(d + 1, d + 1);
    gcoef.topLeftCorner(d, d) = Matrix::Identity(d, d);
    Matrix rcoef = Matrix::Zero(d + 1, d + 1);
    rcoef(d, d) = 1.0;
    builder.add_lmi(c0, {{layout.gamma, gcoef}, {layout.dro_rho, rcoef}});
  }

  // gamma I - N0 - Hbar_0' M_0 Hbar_0 - sum_t W_t >= 0.
  {
    std::vector<std::pair<int, Matrix>> terms;
    terms.emplace_back(layout.gamma, Matrix::Identity(d, d));
    for (const auto& w : w_idx) {
      for (int j = 0; j < d; ++j) {
        for (int i = j; i < d; ++i) {
          terms.emplace_back(w[i][j], -detail::sym_basis(d, 0, 0, i, j));
        }
      }
    }
    const Matrix h0 = tables.Hbar[0];
    builder.add_lmi(
        -tables.N[0] - symmetrize(h0.transpose() * tables.M[0] * h0), terms);
  }

  // [gamma I - Gamma0 - sum_t V_t, gamma I; gamma I, U] >= 0.
  {
    std::vector<std::pair<int, Matrix>> terms;
    Matrix gcoef = Matrix::Zero(2 * d, 2 * d);
    gcoef.topLeftCorner(d, d) = Matrix::Identity(d, d);
    gcoef.topRightCorner(d, d) = Matrix::Identity(d, d);
    gcoef.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
    terms.emplace_back(layout.gamma, gcoef);
    for (const auto& v : v_idx) {
      for (int j = 0; j < d; ++j) {
        for (int i = j; i < d; ++i) {
          terms.emplace_back(v[i][j], -detail::sym_basis(2 * d, 0, 0, i, j));
        }
      }
    }
    for (int j = 0; j < d; ++j) {
      for (int i = j; i < d; ++i) {
        terms.emplace_back(layout.U[i][j], detail::sym_basis(2 * d, d, d, i, j));
      }
    }
    Matrix c0 = Matrix::Zero(2 * d, 2 * d);
    c0.topLeftCorner(d, d) = -tables.Gamma[0];
    builder.add_lmi(c0, terms);
  }

  return {builder.build(), layout};
}

/** Regret-optimal row-sum controller via the convex SDP. The result's value
 * is the worst-case regret over the ball; the policy anchors at the ball
 * center. A zero radius or vanishing noise feedforward short-circuits to the
 * gain-only reference policy with zero regret. */
inline SynthesisResult drro_synthesize(
    std::shared_ptr<const RiccatiTables> tables, const GelbrichBall& ball,
    const SolverOptions& opts = {}) {
  ball.validate();
  if (tables->d() != ball.d()) {
    throw DimensionError("ball dimension does not match the noise dimension");
  }
  const int d = tables->d();
  SynthesisResult out;
  out.theta = ball.mu_hat;
  out.U = Matrix::Zero(d, d);
  if (ball.delta == 0.0 || detail::noise_feedforward_vanishes(*tables)) {
    out.policy = detail::gain_only_policy(tables, ball.mu_hat);
    out.value = 0.0;
    return out;
  }

  auto [prob, layout] = build_drro_sdp(*tables, ball);
  ConicSolution sol =
      detail::solve_or_throw(prob, opts, "regret-optimal synthesis");

  out.policy.tables = tables;
  out.policy.anchor = ball.mu_hat;
  out.policy.Lambda =
      detail::extract_lambdas(sol.x, layout, tables->m(), tables->d());
  out.value = detail::clamp_tiny_negative(sol.stats.primal_obj);
  out.gamma = sol.x[layout.gamma];
  out.U = symmetrize(detail::extract_symmetric(sol.x, layout.U));
  out.solver_stats = sol.stats;
  out.solver_status = sol.status;
  return out;
}

/** Minimizes worst-case expected cost over row-sum policies. The returned
 * policy anchors at the recentered mean theta = mu_hat +
 * (gamma I - N0)^dagger (P0'x0 + N0 mu_hat); the pseudoinverse drops
 * eigenvalues below 1e-10 of the largest and refuses (by throwing) when the
 * dropped directions carry mass of the right-hand side. */
inline SynthesisResult dro_synthesize(
    std::shared_ptr<const RiccatiTables> tables, const GelbrichBall& ball,
    const Vector& x0, const SolverOptions& opts = {}) {
  ball.validate();
  if (tables->d() != ball.d()) {
    throw DimensionError("ball dimension does not match the noise dimension");
  }
  if (x0.size() != tables->n()) {
    throw DimensionError("initial state length mismatch");
  }
  SynthesisResult out;
  if (ball.delta == 0.0) {
    out.policy = detail::gain_only_policy(tables, ball.mu_hat);
    out.theta = ball.mu_hat;
    out.U = Matrix::Zero(tables->d(), tables->d());
    out.value = fixed_law_value(*tables, x0, ball.center());
    return out;
  }

  auto [prob, layout] = build_dro_sdp(*tables, ball, x0);
  ConicSolution sol =
      detail::solve_or_throw(prob, opts, "robust-cost synthesis");

  const int d = tables->d();
  out.gamma = sol.x[layout.gamma];
  const Matrix gap =
      out.gamma * Matrix::Identity(d, d) - symmetrize(tables->N[0]);
  const Vector p = tables->P[0].transpose() * x0 + tables->N[0] * ball.mu_hat;
  const Matrix pinv = pinv_sym(gap);
  const Vector shift = pinv * p;
  if ((gap * shift - p).norm() > 1e-6 * (1.0 + p.norm())) {
    throw PseudoinverseError(
        "recentered mean undefined: gamma I - N0 is singular along the "
        "right-hand side (gamma=" +
        std::to_string(out.gamma) +
        ", residual=" + std::to_string((gap * shift - p).norm()) + ")");
  }
  out.theta = ball.mu_hat + shift;

  out.policy.tables = tables;
  out.policy.anchor = out.theta;
  out.policy.Lambda = detail::extract_lambdas(sol.x, layout, tables->m(), d);
  out.value = sol.stats.primal_obj + layout.constant;
  out.U = symmetrize(detail::extract_symmetric(sol.x, layout.U));
  out.solver_stats = sol.stats;
  out.solver_status = sol.status;
  return out;
}

/** The reference (gain plus nominal feedforward) controller, valued by its
 * own worst-case regret over the ball. */
inline SynthesisResult ce_synthesize(
    std::shared_ptr<const RiccatiTables> tables, const GelbrichBall& ball) {
  ball.validate();
  if (tables->d() != ball.d()) {
    throw DimensionError("ball dimension does not match the noise dimension");
  }
  SynthesisResult out;
  out.policy = detail::gain_only_policy(tables, ball.mu_hat);
  out.theta = ball.mu_hat;
  out.U = Matrix::Zero(tables->d(), tables->d());
  if (ball.delta == 0.0 || detail::noise_feedforward_vanishes(*tables)) {
    out.value = 0.0;
    return out;
  }
  const RegretQuadratic quad =
      regret_quadratic_row_sum(out.policy, ball.mu_hat);
  const WorstCaseRegret wcr = worst_case_regret(quad, ball);
  out.value = wcr.value;
  out.gamma = wcr.gamma_star;
  return out;
}

/**
 * Shifts a policy's regret quadratic into its expected-cost quadratic: with
 * z = mu - mu_hat,
 *
 *   J(pi; mu, Sigma) = J*(mu, Sigma) + R(pi; mu, Sigma)
 *     = [a + J*(mu_hat, 0)] + 2 z'(c + P0'x0 + N0 mu_hat)
 *       + z'(Bcal + N0) z + tr((Acal + Gamma0) Sigma),
 *
 * so the scalar-dual oracle maximizes expected cost over the ball directly.
 * The mean-curvature block need not stay PSD; the oracle only requires its
 * clamped top eigenvalue.
 */
inline RegretQuadratic cost_quadratic(const RiccatiTables& tables,
                                      const RegretQuadratic& quad,
                                      const Vector& x0, const Vector& mu_hat) {
  RegretQuadratic out = quad;
  out.a += x0.dot(tables.S[0] * x0) + 2.0 * x0.dot(tables.P[0] * mu_hat) +
           mu_hat.dot(tables.N[0] * mu_hat);
  out.c += tables.P[0].transpose() * x0 + tables.N[0] * mu_hat;
  out.Bcal = symmetrize(out.Bcal + tables.N[0]);
  out.Acal = symmetrize(out.Acal + tables.Gamma[0]);
  return out;
}

inline double worst_case_expected_cost(const RowSumPolicy& policy,
                                       const GelbrichBall& ball,
                                       const Vector& x0) {
  const RegretQuadratic quad = regret_quadratic_row_sum(policy, ball.mu_hat);
  const RegretQuadratic cost =
      cost_quadratic(*policy.tables, quad, x0, ball.mu_hat);
  if (ball.delta == 0.0) {
    return regret_value_at(cost, Vector::Zero(ball.d()), ball.Sigma_hat);
  }
  return worst_case_regret(cost, ball).value;
}

}  // namespace drlqr

#endif  // DRLQR_SYNTHESIS_HPP_
