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

#ifndef DRLQR_CONIC_SOLVER_HPP_
#define DRLQR_CONIC_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "drlqr/conic.hpp"
#include "drlqr/errors.hpp"
#include "drlqr/linalg.hpp"

namespace drlqr {

struct SolverOptions {
  double tol = 1e-8;        // target for residuals and relative gap
  double loose_tol = 1e-6;  // accepted on stall; reported via stats.loosened
  int max_iters = 200;
  double step_frac = 0.99;  // fraction of the step to the cone boundary
  bool verbose = false;
};

enum class SolveStatus { optimal, primal_infeasible, dual_infeasible,
                         numerical_limit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::primal_infeasible: return "primal_infeasible";
    case SolveStatus::dual_infeasible: return "dual_infeasible";
    case SolveStatus::numerical_limit: return "numerical_limit";
  }
  return "unknown";
}

struct SolverStats {
  int iterations = 0;
  double primal_res = std::numeric_limits<double>::infinity();
  double dual_res = std::numeric_limits<double>::infinity();
  double rel_gap = std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  bool loosened = false;  // converged only to loose_tol
};

struct ConicSolution {
  SolveStatus status = SolveStatus::numerical_limit;
  Vector x;
  Vector duals;   // one entry per problem row (equality multipliers included)
  Vector slacks;  // one entry per problem row (zero-cone rows are 0)
  SolverStats stats;
};

namespace ipm {

// Primal-dual path following for the split form
//
//   min c'x  s.t.  A x = b_eq,  G x + s = h,  s in K,
//
// with Nesterov-Todd scaling on K = (nonneg orthant) x (PSD blocks). Each
// iteration factors the quasidefinite KKT matrix
//
//   [ 0   A'   G'  ] [dx]   [bx]
//   [ A   0    0   ] [dy] = [by]
//   [ G   0  -W'W  ] [dz]   [bz]
//
// once (sparse LU) and reuses it for the predictor and the Mehrotra
// corrector, both expressed in the scaled space where s and z coincide with
// the scaling point lambda.

struct Block {
  ConeKind kind = ConeKind::nonneg;
  int size = 0;    // orthant length or matrix side
  int offset = 0;  // first row inside the inequality part
  int rows = 0;    // orthant length or svec dimension
};

// NT scaling data per block. For the orthant w_i = sqrt(s_i/z_i) and
// lambda_i = sqrt(s_i z_i). For a PSD block with S = Ls Ls', Z = Lz Lz' and
// SVD Lz'Ls = U Sig V', the scaling matrix is R = Ls V Sig^{-1/2} with
// R^{-1} = Sig^{-1/2} U' Lz', the scaled point is the diagonal Sig, and
// W'W acts on svec as X -> (RR') X (RR').
struct Scaling {
  std::vector<Vector> w;      // per block (orthant only)
  std::vector<Matrix> r;      // per block (psd only)
  std::vector<Matrix> r_inv;  // per block (psd only)
  std::vector<Matrix> nt;     // per block: RR' (psd only)
  Vector lambda;              // scaled point, all inequality rows
};

class Solver {
 public:
  Solver(const ConicProblem& prob, const SolverOptions& opts)
      : opts_(opts), nx_(prob.num_vars()) {
    prob.validate();
    split(prob);
  }

  ConicSolution run() {
    ConicSolution out;
    initialize();
    Vector best_x = x_, best_y = y_, best_z = z_, best_s = s_;
    double best_metric = std::numeric_limits<double>::infinity();
    SolverStats best_stats;
    int stall = 0;

    for (int iter = 0; iter <= opts_.max_iters; ++iter) {
      // Residuals and optimality metrics of the current iterate.
      const Vector rx = c_ + at() * y_ + gt() * z_;
      const Vector ry = a_ * x_ - beq_;
      const Vector rz = g_ * x_ + s_ - h_;
      const double gap = s_.dot(z_);
      const double pcost = c_.dot(x_);
      const double dcost = -beq_.dot(y_) - h_.dot(z_);
      const double pres =
          std::sqrt(ry.squaredNorm() + rz.squaredNorm()) / pd_norm_;
      const double dres = rx.norm() / d_norm_;
      const double relgap =
          gap / std::max({1.0, std::abs(pcost), std::abs(dcost)});

      SolverStats stats;
      stats.iterations = iter;
      stats.primal_res = pres;
      stats.dual_res = dres;
      stats.rel_gap = relgap;
      stats.gap = gap;
      stats.primal_obj = pcost;
      stats.dual_obj = dcost;

      const double metric = std::max({pres, dres, relgap});
      if (metric < best_metric) {
        best_metric = metric;
        best_stats = stats;
        best_x = x_; best_y = y_; best_z = z_; best_s = s_;
        stall = 0;
      } else {
        ++stall;
      }

      if (pres <= opts_.tol && dres <= opts_.tol && relgap <= opts_.tol) {
        return finish(SolveStatus::optimal, stats, x_, y_, z_, s_, false);
      }
      if (SolveStatus cert = certificates(); cert != SolveStatus::optimal) {
        stats.iterations = iter;
        return finish(cert, stats, x_, y_, z_, s_, false);
      }
      if (iter == opts_.max_iters || stall >= 15) break;

      Scaling sc;
      if (!compute_scaling(sc)) break;
      if (!factor(&sc)) break;

      // Predictor: target complementarity 0, i.e. d_lambda = -lambda o
      // lambda, whose lambda-inverse image is -lambda and W'(-lambda) = -s.
      Vector bx = -rx, by = -ry;
      Vector bz = -rz + s_;
      Vector dx, dy, dz;
      if (!solve_kkt(bx, by, bz, dx, dy, dz)) break;
      Vector ds = -s_ - wtw(sc, dz);

      Vector dzb = w_apply(sc, dz);        // scaled predictor directions
      Vector dsb = winv_t_apply(sc, ds);
      const double alpha_aff =
          std::min(1.0, std::min(step_max(sc, dsb), step_max(sc, dzb)));
      const double mu = gap / nu_;
      double mu_aff = (sc.lambda + alpha_aff * dsb)
                          .dot(sc.lambda + alpha_aff * dzb) / nu_;
      double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
      sigma = std::min(1.0, sigma);

      // Corrector: d_lambda = -lambda o lambda - dsb o dzb + sigma mu e.
      Vector dl = -circ(sc, sc.lambda, sc.lambda) - circ(sc, dsb, dzb) +
                  sigma * mu * e_;
      Vector q = circ_inv(sc, dl);
      bz = -rz - wt_apply(sc, q);
      if (!solve_kkt(bx, by, bz, dx, dy, dz)) break;
      ds = wt_apply(sc, q) - wtw(sc, dz);

      dzb = w_apply(sc, dz);
      dsb = winv_t_apply(sc, ds);
      const double alpha =
          std::min(1.0, opts_.step_frac *
                            std::min(step_max(sc, dsb), step_max(sc, dzb)));
      if (alpha < 1e-10) break;

      x_ += alpha * dx;
      y_ += alpha * dy;
      z_ += alpha * dz;
      s_ += alpha * ds;
    }

    // No certificate and the target tolerance was not reached: report the
    // best iterate, accepting it as optimal at the documented loose_tol.
    const bool loose_ok = best_metric <= opts_.loose_tol;
    best_stats.loosened = loose_ok;
    return finish(loose_ok ? SolveStatus::optimal
                           : SolveStatus::numerical_limit,
                  best_stats, best_x, best_y, best_z, best_s, loose_ok);
  }

 private:
  using Sparse = Eigen::SparseMatrix<double>;

  void split(const ConicProblem& prob) {
    c_ = prob.c;
    // Map original rows to the equality part (zero cones) or the inequality
    // part, preserving order within each.
    const int total = prob.num_rows();
    row_is_eq_.assign(total, false);
    row_local_.assign(total, 0);
    int row = 0, n_eq = 0, n_ineq = 0;
    for (const Cone& cone : prob.cones) {
      const int r = cone.rows();
      if (cone.kind == ConeKind::zero) {
        for (int i = 0; i < r; ++i) {
          row_is_eq_[row + i] = true;
          row_local_[row + i] = n_eq++;
        }
      } else {
        Block blk;
        blk.kind = cone.kind;
        blk.size = cone.size;
        blk.offset = n_ineq;
        blk.rows = r;
        blocks_.push_back(blk);
        for (int i = 0; i < r; ++i) row_local_[row + i] = n_ineq++;
      }
      row += r;
    }
    p_ = n_eq;
    m_ = n_ineq;
    if (m_ == 0) {
      throw BadProblemError("conic solver requires at least one inequality "
                            "cone");
    }

    std::vector<Eigen::Triplet<double>> ta, tg;
    for (const auto& t : prob.triplets) {
      if (row_is_eq_[t.row()]) {
        ta.emplace_back(row_local_[t.row()], t.col(), t.value());
      } else {
        tg.emplace_back(row_local_[t.row()], t.col(), t.value());
      }
    }
    a_.resize(p_, nx_);
    a_.setFromTriplets(ta.begin(), ta.end());
    g_.resize(m_, nx_);
    g_.setFromTriplets(tg.begin(), tg.end());
    beq_.resize(p_);
    h_.resize(m_);
    for (int i = 0; i < total; ++i) {
      (row_is_eq_[i] ? beq_[row_local_[i]] : h_[row_local_[i]]) = prob.b[i];
    }

    nu_ = 0;
    e_.resize(m_);
    for (const Block& blk : blocks_) {
      nu_ += blk.size;
      if (blk.kind == ConeKind::nonneg) {
        e_.segment(blk.offset, blk.rows).setOnes();
      } else {
        e_.segment(blk.offset, blk.rows) = svec_identity(blk.size);
      }
    }
    pd_norm_ = std::max(1.0, std::sqrt(beq_.squaredNorm() + h_.squaredNorm()));
    d_norm_ = std::max(1.0, c_.norm());

    fixed_triplets_.clear();
    auto add_cross = [&](const Sparse& mat, int row0, int col0) {
      for (int k = 0; k < mat.outerSize(); ++k) {
        for (Sparse::InnerIterator it(mat, k); it; ++it) {
          fixed_triplets_.emplace_back(row0 + it.row(), col0 + it.col(),
                                       it.value());
          fixed_triplets_.emplace_back(col0 + it.col(), row0 + it.row(),
                                       it.value());
        }
      }
    };
    add_cross(a_, nx_, 0);
    add_cross(g_, nx_ + p_, 0);
  }

  Sparse at() const { return a_.transpose(); }
  Sparse gt() const { return g_.transpose(); }

  /** Starting point from two least-squares style solves with W = I. */
  void initialize() {
    if (!factor(nullptr)) {
      throw SolverError("conic solver: initial KKT factorization failed");
    }
    Vector dx, dy, dz;
    if (!solve_kkt(Vector::Zero(nx_), beq_, h_, dx, dy, dz)) {
      throw SolverError("conic solver: primal initialization failed");
    }
    x_ = dx;
    s_ = -dz;  // third row gives G x - dz = h, so h - G x = -dz
    shift_interior(s_);

    if (!solve_kkt(-c_, Vector::Zero(p_), Vector::Zero(m_), dx, dy, dz)) {
      throw SolverError("conic solver: dual initialization failed");
    }
    y_ = dy;
    z_ = dz;
    shift_interior(z_);
  }

  /** Shifts v into the interior of K blockwise: v += (1 + t) e if its
   * smallest eigenvalue -t is not safely positive. */
  void shift_interior(Vector& v) const {
    for (const Block& blk : blocks_) {
      auto seg = v.segment(blk.offset, blk.rows);
      double lmin;
      if (blk.kind == ConeKind::nonneg) {
        lmin = seg.minCoeff();
      } else {
        Eigen::SelfAdjointEigenSolver<Matrix> es(smat(seg, blk.size),
                                                 Eigen::EigenvaluesOnly);
        lmin = es.eigenvalues().minCoeff();
      }
      if (lmin < 1e-8) {
        if (blk.kind == ConeKind::nonneg) {
          seg.array() += 1.0 - lmin;
        } else {
          seg += (1.0 - lmin) * svec_identity(blk.size);
        }
      }
    }
  }

  bool compute_scaling(Scaling& sc) const {
    const std::size_t nb = blocks_.size();
    sc.w.assign(nb, Vector());
    sc.r.assign(nb, Matrix());
    sc.r_inv.assign(nb, Matrix());
    sc.nt.assign(nb, Matrix());
    sc.lambda.resize(m_);
    for (std::size_t bi = 0; bi < nb; ++bi) {
      const Block& blk = blocks_[bi];
      auto s_seg = s_.segment(blk.offset, blk.rows);
      auto z_seg = z_.segment(blk.offset, blk.rows);
      if (blk.kind == ConeKind::nonneg) {
        if ((s_seg.array() <= 0).any() || (z_seg.array() <= 0).any()) {
          return false;
        }
        sc.w[bi] = (s_seg.array() / z_seg.array()).sqrt();
        sc.lambda.segment(blk.offset, blk.rows) =
            (s_seg.array() * z_seg.array()).sqrt();
      } else {
        const int k = blk.size;
        Eigen::LLT<Matrix> ls(smat(s_seg, k));
        Eigen::LLT<Matrix> lz(smat(z_seg, k));
        if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) {
          return false;
        }
        const Matrix mls = ls.matrixL();
        const Matrix mlz = lz.matrixL();
        Eigen::JacobiSVD<Matrix> svd(mlz.transpose() * mls,
                                     Eigen::ComputeFullU |
                                         Eigen::ComputeFullV);
        Vector sig = svd.singularValues();
        if ((sig.array() <= 0).any()) return false;
        Vector isqrt = sig.array().sqrt().inverse();
        sc.r[bi] = mls * svd.matrixV() * isqrt.asDiagonal();
        sc.r_inv[bi] =
            isqrt.asDiagonal() * svd.matrixU().transpose() * mlz.transpose();
        sc.nt[bi] = sc.r[bi] * sc.r[bi].transpose();
        sc.lambda.segment(blk.offset, blk.rows) =
            svec(Matrix(sig.asDiagonal()));
      }
    }
    return true;
  }

  // Blockwise operators in svec coordinates. W maps Z to R'ZR, its adjoint
  // maps S to RSR', and W'W is the congruence by RR'.
  Vector w_apply(const Scaling& sc, const Vector& u) const {
    Vector out(m_);
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const Block& blk = blocks_[bi];
      auto seg = u.segment(blk.offset, blk.rows);
      if (blk.kind == ConeKind::nonneg) {
        out.segment(blk.offset, blk.rows) = sc.w[bi].array() * seg.array();
      } else {
        out.segment(blk.offset, blk.rows) = svec(symmetrize(
            sc.r[bi].transpose() * smat(seg, blk.size) * sc.r[bi]));
      }
    }
    return out;
  }

  Vector wt_apply(const Scaling& sc, const Vector& u) const {
    Vector out(m_);
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const Block& blk = blocks_[bi];
      auto seg = u.segment(blk.offset, blk.rows);
      if (blk.kind == ConeKind::nonneg) {
        out.segment(blk.offset, blk.rows) = sc.w[bi].array() * seg.array();
      } else {
        out.segment(blk.offset, blk.rows) = svec(symmetrize(
            sc.r[bi] * smat(seg, blk.size) * sc.r[bi].transpose()));
      }
    }
    return out;
  }

  Vector winv_t_apply(const Scaling& sc, const Vector& u) const {
    Vector out(m_);
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const Block& blk = blocks_[bi];
      auto seg = u.segment(blk.offset, blk.rows);
      if (blk.kind == ConeKind::nonneg) {
        out.segment(blk.offset, blk.rows) = seg.array() / sc.w[bi].array();
      } else {
        out.segment(blk.offset, blk.rows) = svec(symmetrize(
            sc.r_inv[bi] * smat(seg, blk.size) * sc.r_inv[bi].transpose()));
      }
    }
    return out;
  }

  Vector wtw(const Scaling& sc, const Vector& u) const {
    Vector out(m_);
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const Block& blk = blocks_[bi];
      auto seg = u.segment(blk.offset, blk.rows);
      if (blk.kind == ConeKind::nonneg) {
        out.segment(blk.offset, blk.rows) =
            sc.w[bi].array().square() * seg.array();
      } else {
        out.segment(blk.offset, blk.rows) = svec(symmetrize(
            sc.nt[bi] * smat(seg, blk.size) * sc.nt[bi]));
      }
    }
    return out;
  }

  /** Jordan product u o v: elementwise on the orthant, symmetrized matrix
   * product on PSD blocks. */
  Vector circ(const Scaling&, const Vector& u, const Vector& v) const {
    Vector out(m_);
    for (const Block& blk : blocks_) {
      auto useg = u.segment(blk.offset, blk.rows);
      auto vseg = v.segment(blk.offset, blk.rows);
      if (blk.kind == ConeKind::nonneg) {
        out.segment(blk.offset, blk.rows) = useg.array() * vseg.array();
      } else {
        const Matrix mu = smat(useg, blk.size);
        const Matrix mv = smat(vseg, blk.size);
        out.segment(blk.offset, blk.rows) =
            svec(0.5 * (mu * mv + mv * mu));
      }
    }
    return out;
  }

  /** Solves lambda o q = d. The scaled point is diagonal on PSD blocks, so
   * the product is entrywise: q_ij = 2 d_ij / (lambda_i + lambda_j). */
  Vector circ_inv(const Scaling& sc, const Vector& d) const {
    Vector out(m_);
    for (const Block& blk : blocks_) {
      auto lseg = sc.lambda.segment(blk.offset, blk.rows);
      auto dseg = d.segment(blk.offset, blk.rows);
      if (blk.kind == ConeKind::nonneg) {
        out.segment(blk.offset, blk.rows) = dseg.array() / lseg.array();
      } else {
        const int k = blk.size;
        Vector diag(k);
        int idx = 0;
        for (int j = 0; j < k; ++j) {
          diag[j] = lseg[idx];
          idx += k - j;
        }
        Vector q(blk.rows);
        idx = 0;
        for (int j = 0; j < k; ++j) {
          for (int i = j; i < k; ++i) {
            q[idx] = 2.0 * dseg[idx] / (diag[i] + diag[j]);
            ++idx;
          }
        }
        out.segment(blk.offset, blk.rows) = q;
      }
    }
    return out;
  }

  /** Largest step alpha with lambda + alpha d in K, for a direction given in
   * the scaled space where the current point is lambda. */
  double step_max(const Scaling& sc, const Vector& d) const {
    double bound = std::numeric_limits<double>::infinity();
    for (const Block& blk : blocks_) {
      auto lseg = sc.lambda.segment(blk.offset, blk.rows);
      auto dseg = d.segment(blk.offset, blk.rows);
      if (blk.kind == ConeKind::nonneg) {
        for (int i = 0; i < blk.rows; ++i) {
          if (dseg[i] < 0.0) bound = std::min(bound, -lseg[i] / dseg[i]);
        }
      } else {
        const int k = blk.size;
        Vector diag(k);
        int idx = 0;
        for (int j = 0; j < k; ++j) {
          diag[j] = lseg[idx];
          idx += k - j;
        }
        Matrix md = smat(dseg, k);
        for (int j = 0; j < k; ++j) {
          for (int i = 0; i < k; ++i) {
            md(i, j) /= std::sqrt(diag[i] * diag[j]);
          }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(md, Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues().minCoeff();
        if (lmin < 0.0) bound = std::min(bound, -1.0 / lmin);
      }
    }
    return bound;
  }

  /** Builds and LU-factors the KKT matrix, with H = W'W from the scaling or
   * H = I when sc is null (initialization). Retries once with a small
   * quasidefinite diagonal regularization if the factorization fails. */
  bool factor(const Scaling* sc) {
    const int n = nx_ + p_ + m_;
    std::vector<Eigen::Triplet<double>> trip = fixed_triplets_;
    if (sc == nullptr) {
      for (int i = 0; i < m_; ++i) {
        trip.emplace_back(nx_ + p_ + i, nx_ + p_ + i, -1.0);
      }
    } else {
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        const Block& blk = blocks_[bi];
        const int base = nx_ + p_ + blk.offset;
        if (blk.kind == ConeKind::nonneg) {
          for (int i = 0; i < blk.rows; ++i) {
            const double wi = sc->w[bi][i];
            trip.emplace_back(base + i, base + i, -wi * wi);
          }
        } else {
          // Dense svec representation of X -> (RR') X (RR').
          const Matrix& nt = sc->nt[bi];
          for (int col = 0; col < blk.rows; ++col) {
            Vector ej = Vector::Zero(blk.rows);
            ej[col] = 1.0;
            const Vector hcol =
                svec(symmetrize(nt * smat(ej, blk.size) * nt));
            for (int row = 0; row < blk.rows; ++row) {
              if (hcol[row] != 0.0) {
                trip.emplace_back(base + row, base + col, -hcol[row]);
              }
            }
          }
        }
      }
    }

    for (int attempt = 0; attempt < 2; ++attempt) {
      std::vector<Eigen::Triplet<double>> all = trip;
      if (attempt == 1) {
        const double reg = 1e-9;
        for (int i = 0; i < n; ++i) {
          all.emplace_back(i, i, i < nx_ ? reg : -reg);
        }
      }
      kkt_.resize(n, n);
      kkt_.setFromTriplets(all.begin(), all.end());
      kkt_.makeCompressed();
      lu_.compute(kkt_);
      if (lu_.info() == Eigen::Success) return true;
    }
    return false;
  }

  bool solve_kkt(const Vector& bx, const Vector& by, const Vector& bz,
                 Vector& dx, Vector& dy, Vector& dz) const {
    Vector rhs(nx_ + p_ + m_);
    rhs << bx, by, bz;
    Vector sol = lu_.solve(rhs);
    if (!sol.allFinite()) return false;
    // One round of iterative refinement.
    Vector resid = rhs - kkt_ * sol;
    sol += lu_.solve(resid);
    if (!sol.allFinite()) return false;
    dx = sol.head(nx_);
    dy = sol.segment(nx_, p_);
    dz = sol.tail(m_);
    return true;
  }

  /** Self-dual style certificates: a dual point with h'z + b'y < 0 whose
   * normalized combination A'y + G'z vanishes proves primal infeasibility; a
   * primal ray with c'x < 0 in the recession cone proves unboundedness. */
  SolveStatus certificates() const {
    const double hz_by = h_.dot(z_) + beq_.dot(y_);
    if (hz_by < 0.0) {
      const double res = (at() * y_ + gt() * z_).norm() / (-hz_by);
      if (res <= opts_.tol * d_norm_) return SolveStatus::primal_infeasible;
    }
    const double cx = c_.dot(x_);
    if (cx < 0.0) {
      const double res =
          std::sqrt((a_ * x_).squaredNorm() + (g_ * x_ + s_).squaredNorm()) /
          (-cx);
      if (res <= opts_.tol * pd_norm_) return SolveStatus::dual_infeasible;
    }
    return SolveStatus::optimal;  // sentinel for "no certificate"
  }

  ConicSolution finish(SolveStatus status, const SolverStats& stats,
                       const Vector& x, const Vector& y, const Vector& z,
                       const Vector& s, bool loosened) const {
    ConicSolution out;
    out.status = status;
    out.stats = stats;
    out.stats.loosened = loosened;
    out.x = x;
    const int total = static_cast<int>(row_is_eq_.size());
    out.duals.resize(total);
    out.slacks.resize(total);
    for (int i = 0; i < total; ++i) {
      if (row_is_eq_[i]) {
        out.duals[i] = y[row_local_[i]];
        out.slacks[i] = 0.0;
      } else {
        out.duals[i] = z[row_local_[i]];
        out.slacks[i] = s[row_local_[i]];
      }
    }
    return out;
  }

  SolverOptions opts_;
  int nx_ = 0, p_ = 0, m_ = 0;
  double nu_ = 0.0;
  double pd_norm_ = 1.0, d_norm_ = 1.0;
  Vector c_, beq_, h_, e_;
  Sparse a_, g_, kkt_;
  std::vector<Block> blocks_;
  std::vector<bool> row_is_eq_;
  std::vector<int> row_local_;
  std::vector<Eigen::Triplet<double>> fixed_triplets_;
  Eigen::SparseLU<Sparse> lu_;
  Vector x_, y_, z_, s_;
};

}  // namespace ipm

inline ConicSolution solve_conic(const ConicProblem& prob,
                                 const SolverOptions& opts = {}) {
  ipm::Solver solver(prob, opts);
  return solver.run();
}

}  // namespace drlqr

#endif  // DRLQR_CONIC_SOLVER_HPP_
