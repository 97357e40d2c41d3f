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

#ifndef DRLQR_POLICY_HPP_
#define DRLQR_POLICY_HPP_

#include <memory>
#include <string>
#include <vector>

#include "drlqr/errors.hpp"
#include "drlqr/linalg.hpp"
#include "drlqr/lqr.hpp"

namespace drlqr {

// Linear disturbance-feedback policy written relative to a reference mean
// ("anchor") as
//
//   u_t = K_t x_t + Hbar_t * anchor + sum_{s<t} F_ts (w_s - anchor) + g_t.
//
// Only the strictly lower-triangular gains F_ts and the offsets g_t are free;
// K_t and Hbar_t come from the Riccati tables. F[t] holds the t blocks
// F_t0..F_t,t-1, so F[0] is empty.
struct GeneralPolicy {
  std::shared_ptr<const RiccatiTables> tables;
  Vector anchor;
  std::vector<std::vector<Matrix>> F;
  std::vector<Vector> g;

  int T() const { return tables->T; }

  void validate() const {
    const int m = tables->m(), d = tables->d(), horizon = tables->T;
    if (anchor.size() != d) throw DimensionError("policy anchor length != d");
    if (static_cast<int>(F.size()) != horizon ||
        static_cast<int>(g.size()) != horizon) {
      throw DimensionError("policy F/g must have T entries");
    }
    for (int t = 0; t < horizon; ++t) {
      if (static_cast<int>(F[t].size()) != t) {
        throw DimensionError("F[" + std::to_string(t) + "] must hold " +
                             std::to_string(t) + " blocks (s < t only)");
      }
      for (const Matrix& blk : F[t]) {
        if (blk.rows() != m || blk.cols() != d) {
          throw DimensionError("F block must be m x d");
        }
      }
      if (g[t].size() != m) throw DimensionError("g entry length != m");
    }
  }

  Vector action(int t, const Vector& x, const std::vector<Vector>& history) const {
    if (t < 0 || t >= T()) throw DimensionError("action: time index out of range");
    if (static_cast<int>(history.size()) != t) {
      throw DimensionError("action: history must hold exactly t disturbances");
    }
    Vector u = ce_gain_action(*tables, t, x, anchor);
    for (int s = 0; s < t; ++s) u += F[t][s] * (history[s] - anchor);
    u += g[t];
    return u;
  }
};

// Row-sum policy: control feeds back only the running mean of past
// disturbances,
//
//   u_t = K_t x_t + Hbar_t * anchor + Lambda_t (wbar_{0:t-1} - anchor),
//
// with the convention Lambda_0 := 0 (no history at t=0). Lambda[t-1] stores
// Lambda_t for t = 1..T-1. The anchor is mu_hat for the CE and regret-optimal
// policies and the shifted center theta for the worst-case-cost policy.
struct RowSumPolicy {
  std::shared_ptr<const RiccatiTables> tables;
  Vector anchor;
  std::vector<Matrix> Lambda;

  int T() const { return tables->T; }

  void validate() const {
    const int m = tables->m(), d = tables->d(), horizon = tables->T;
    if (anchor.size() != d) throw DimensionError("policy anchor length != d");
    if (static_cast<int>(Lambda.size()) != horizon - 1) {
      throw DimensionError("Lambda must hold T-1 blocks (t = 1..T-1)");
    }
    for (const Matrix& blk : Lambda) {
      if (blk.rows() != m || blk.cols() != d) {
        throw DimensionError("Lambda block must be m x d");
      }
    }
  }

  Vector action(int t, const Vector& x, const std::vector<Vector>& history) const {
    if (t < 0 || t >= T()) throw DimensionError("action: time index out of range");
    if (static_cast<int>(history.size()) != t) {
      throw DimensionError("action: history must hold exactly t disturbances");
    }
    // t = 0 runs the identical formula path as the certainty-equivalent
    // reference, so the two actions agree bitwise, not just numerically.
    Vector u = ce_gain_action(*tables, t, x, anchor);
    if (t >= 1) {
      Vector wbar = Vector::Zero(anchor.size());
      for (const Vector& w : history) wbar += w;
      wbar /= static_cast<double>(t);
      u += Lambda[t - 1] * (wbar - anchor);
    }
    return u;
  }
};

/**
 * Expands a row-sum policy into the general parametrization relative to the
 * reference mean `mu_ref`: the mean-feedback block splits equally,
 * F_ts = Lambda_t / t, and the offset absorbs the anchor shift,
 * g_t = (Hbar_t - Lambda_t)(anchor - mu_ref). Both representations produce
 * identical actions on identical histories; with mu_ref = anchor the offsets
 * vanish.
 *
 * Regret coefficients are defined relative to the ball center, so callers
 * evaluating a policy anchored elsewhere (the worst-case-cost policy's theta)
 * must expand with mu_ref = mu_hat.
 */
inline GeneralPolicy expand_row_sum(const RowSumPolicy& p,
                                    const Vector& mu_ref) {
  p.validate();
  if (mu_ref.size() != p.anchor.size()) {
    throw DimensionError("expand_row_sum: mu_ref length != d");
  }
  const int horizon = p.T();
  GeneralPolicy out;
  out.tables = p.tables;
  out.anchor = mu_ref;
  out.F.resize(horizon);
  out.g.resize(horizon);
  const Vector shift = p.anchor - mu_ref;
  for (int t = 0; t < horizon; ++t) {
    if (t >= 1) {
      out.F[t].assign(t, p.Lambda[t - 1] / static_cast<double>(t));
      out.g[t] = (p.tables->Hbar[t] - p.Lambda[t - 1]) * shift;
    } else {
      out.g[t] = p.tables->Hbar[t] * shift;
    }
  }
  return out;
}

inline GeneralPolicy expand_row_sum(const RowSumPolicy& p) {
  return expand_row_sum(p, p.anchor);
}

// Coefficients of the inner worst-case problem for a fixed policy: over laws
// (mu_hat + z, Sigma) the regret equals
//
//   a + z'Bcal z + 2 z'c + tr(Acal Sigma).
//
// All four are sums of congruences of M_t > 0, so a >= 0 and Acal, Bcal >= 0.
struct RegretQuadratic {
  double a = 0.0;
  Vector c;
  Matrix Acal;
  Matrix Bcal;
};

/**
 * Builds the regret quadratic of a general policy. With row sums
 * Lambda_t = sum_s F_ts (Lambda_0 = 0):
 *
 *   a    = sum_t g_t' M_t g_t
 *   c    = sum_t (Lambda_t - Hbar_t)' M_t g_t
 *   Acal = sum_{t>=1} sum_{s<t} F_ts' M_t F_ts
 *   Bcal = sum_t (Lambda_t - Hbar_t)' M_t (Lambda_t - Hbar_t)
 *
 * The t = 0 term of Bcal is Hbar_0' M_0 Hbar_0: the adversary always gains
 * from the unavoidable t=0 mean feedforward mismatch.
 */
inline RegretQuadratic regret_quadratic(const GeneralPolicy& p) {
  p.validate();
  const int d = p.tables->d();
  RegretQuadratic q;
  q.c = Vector::Zero(d);
  q.Acal = Matrix::Zero(d, d);
  q.Bcal = Matrix::Zero(d, d);
  for (int t = 0; t < p.T(); ++t) {
    const Matrix& M = p.tables->M[t];
    Matrix lambda_t = Matrix::Zero(p.tables->m(), d);
    for (const Matrix& blk : p.F[t]) {
      lambda_t += blk;
      q.Acal += blk.transpose() * M * blk;
    }
    const Matrix diff = lambda_t - p.tables->Hbar[t];
    q.a += p.g[t].dot(M * p.g[t]);
    q.c += diff.transpose() * M * p.g[t];
    q.Bcal += diff.transpose() * M * diff;
  }
  q.Acal = symmetrize(q.Acal);
  q.Bcal = symmetrize(q.Bcal);
  return q;
}

// Row-sum shortcut: equal splitting F_ts = Lambda_t / t collapses the double
// sum to Acal = sum_{t>=1} (1/t) Lambda_t' M_t Lambda_t. Equivalent to
// regret_quadratic(expand_row_sum(p, mu_ref)) and cheaper for long horizons.
inline RegretQuadratic regret_quadratic_row_sum(const RowSumPolicy& p,
                                                const Vector& mu_ref) {
  p.validate();
  const int d = p.tables->d();
  const Vector shift = p.anchor - mu_ref;
  RegretQuadratic q;
  q.c = Vector::Zero(d);
  q.Acal = Matrix::Zero(d, d);
  q.Bcal = Matrix::Zero(d, d);
  for (int t = 0; t < p.T(); ++t) {
    const Matrix& M = p.tables->M[t];
    const Matrix lambda_t = (t >= 1)
                                ? p.Lambda[t - 1]
                                : Matrix::Zero(p.tables->m(), d);
    const Matrix diff = lambda_t - p.tables->Hbar[t];
    const Vector g_t = -diff * shift;
    if (t >= 1) {
      q.Acal += lambda_t.transpose() * M * lambda_t / static_cast<double>(t);
    }
    q.a += g_t.dot(M * g_t);
    q.c += diff.transpose() * M * g_t;
    q.Bcal += diff.transpose() * M * diff;
  }
  q.Acal = symmetrize(q.Acal);
  q.Bcal = symmetrize(q.Bcal);
  return q;
}

// Evaluates the inner objective a + z'Bcal z + 2 z'c + tr(Acal Sigma) at the
// law (mu_hat + z, Sigma).
inline double regret_value_at(const RegretQuadratic& q, const Vector& z,
                              const Matrix& Sigma) {
  if (z.size() != q.c.size() || Sigma.rows() != q.Acal.rows()) {
    throw DimensionError("regret_value_at: dimension mismatch");
  }
  return q.a + z.dot(q.Bcal * z) + 2.0 * z.dot(q.c) + (q.Acal * Sigma).trace();
}

}  // namespace drlqr

#endif  // DRLQR_POLICY_HPP_
