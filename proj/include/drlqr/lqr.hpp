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

#ifndef DRLQR_LQR_HPP_
#define DRLQR_LQR_HPP_

#include <Eigen/Cholesky>
#include <string>
#include <vector>

#include "drlqr/errors.hpp"
#include "drlqr/linalg.hpp"

namespace drlqr {

// A stage law identified by its first two moments.
struct MomentPair {
  Vector mu;     // mean, length d
  Matrix Sigma;  // covariance, d x d symmetric PSD

  void validate() const {
    require_psd(Sigma, "Sigma");
    if (Sigma.rows() != mu.size()) {
      throw DimensionError("MomentPair: Sigma is " +
                           std::to_string(Sigma.rows()) + "x" +
                           std::to_string(Sigma.cols()) + " but mu has length " +
                           std::to_string(mu.size()));
    }
  }
};

// Finite-horizon stochastic LQR problem data:
//
//   x_{t+1} = A x_t + B u_t + Xi w_t,   t = 0..T-1,  x_0 known,
//   cost    = sum_t (x_t' Q_t x_t + u_t' R_t u_t) + x_T' QT x_T,
//
// with i.i.d. disturbances w_t ~ (mu, Sigma). Stage costs may vary with t;
// A, B, Xi are constant over the horizon.
struct SystemSpec {
  Matrix A;                // n x n
  Matrix B;                // n x m
  Matrix Xi;               // n x d
  std::vector<Matrix> Q;   // T stage state costs, n x n PSD
  Matrix QT;               // terminal state cost, n x n PSD
  std::vector<Matrix> R;   // T stage input costs, m x m PD
  Vector x0;               // initial state, length n
  int T = 0;               // horizon, >= 1

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
  int d() const { return static_cast<int>(Xi.cols()); }

  void validate() const {
    if (T < 1) throw ValidationError("horizon T must be >= 1");
    if (A.rows() != A.cols()) throw DimensionError("A must be square");
    const auto nn = A.rows();
    if (B.rows() != nn) throw DimensionError("B row count must match A");
    if (Xi.rows() != nn) throw DimensionError("Xi row count must match A");
    if (x0.size() != nn) throw DimensionError("x0 length must match A");
    if (static_cast<int>(Q.size()) != T) {
      throw DimensionError("Q must hold T stage costs");
    }
    if (static_cast<int>(R.size()) != T) {
      throw DimensionError("R must hold T stage costs");
    }
    for (int t = 0; t < T; ++t) {
      if (Q[t].rows() != nn) throw DimensionError("Q[" + std::to_string(t) +
                                                  "] must be n x n");
      require_psd(Q[t], "Q[" + std::to_string(t) + "]");
      if (R[t].rows() != B.cols()) {
        throw DimensionError("R[" + std::to_string(t) + "] must be m x m");
      }
      require_pd(R[t], "R[" + std::to_string(t) + "]");
    }
    if (QT.rows() != nn) throw DimensionError("QT must be n x n");
    require_psd(QT, "QT");
  }
};

// Backward-recursion coefficient tables. S, P, N, Gamma run over t = 0..T
// (terminal entries S_T = QT, P_T = 0, N_T = 0, Gamma_T = 0); M, K, Hbar run
// over t = 0..T-1. With these, the fixed-law optimal value is
//
//   J*(mu, Sigma) = x0'S_0 x0 + 2 x0'P_0 mu + mu'N_0 mu + tr(Gamma_0 Sigma),
//
// attained by the certainty-equivalent controller u_t = K_t x_t + Hbar_t mu.
struct RiccatiTables {
  std::vector<Matrix> S;      // T+1, n x n symmetric PSD
  std::vector<Matrix> P;      // T+1, n x d
  std::vector<Matrix> N;      // T+1, d x d symmetric
  std::vector<Matrix> Gamma;  // T+1, d x d symmetric PSD
  std::vector<Matrix> M;      // T,   m x m symmetric PD
  std::vector<Matrix> K;      // T,   m x n
  std::vector<Matrix> Hbar;   // T,   m x d
  int T = 0;

  int n() const { return static_cast<int>(S[0].rows()); }
  int m() const { return static_cast<int>(M[0].rows()); }
  int d() const { return static_cast<int>(P[0].cols()); }
};

/**
 * Runs the backward Riccati recursions for the time-varying finite-horizon
 * problem. For t = T-1 down to 0, with S_{t+1}, P_{t+1}, N_{t+1}, Gamma_{t+1}
 * known:
 *
 *   M_t    = R_t + B'S_{t+1}B
 *   K_t    = -M_t^{-1} B'S_{t+1}A
 *   Hbar_t = -M_t^{-1} B'(S_{t+1}Xi + P_{t+1})
 *   S_t    = Q_t + A'S_{t+1}A - A'S_{t+1}B M_t^{-1} B'S_{t+1}A
 *   P_t    = (A + B K_t)'(S_{t+1}Xi + P_{t+1})
 *   N_t    = N_{t+1} + Xi'S_{t+1}Xi + P_{t+1}'Xi + Xi'P_{t+1}
 *            - Hbar_t' M_t Hbar_t
 *   Gamma_t = Gamma_{t+1} + Xi'S_{t+1}Xi
 *
 * M_t^{-1} is applied through a Cholesky solve; every nominally symmetric
 * output is re-symmetrized each step so long horizons (T ~ 1000) do not
 * accumulate asymmetry drift.
 */
inline RiccatiTables riccati(const SystemSpec& spec) {
  spec.validate();
  const int T = spec.T;
  RiccatiTables tb;
  tb.T = T;
  tb.S.resize(T + 1);
  tb.P.resize(T + 1);
  tb.N.resize(T + 1);
  tb.Gamma.resize(T + 1);
  tb.M.resize(T);
  tb.K.resize(T);
  tb.Hbar.resize(T);

  tb.S[T] = symmetrize(spec.QT);
  tb.P[T] = Matrix::Zero(spec.n(), spec.d());
  tb.N[T] = Matrix::Zero(spec.d(), spec.d());
  tb.Gamma[T] = Matrix::Zero(spec.d(), spec.d());

  for (int t = T - 1; t >= 0; --t) {
    const Matrix& Sn = tb.S[t + 1];
    const Matrix BtS = spec.B.transpose() * Sn;
    const Matrix M = symmetrize(spec.R[t] + BtS * spec.B);
    Eigen::LLT<Matrix> llt(M);
    if (llt.info() != Eigen::Success) {
      // R_t > 0 and S_{t+1} >= 0 make M_t > 0 in exact arithmetic; a failed
      // factorization means the inputs lost definiteness numerically.
      throw SingularMatrixError("M_" + std::to_string(t) +
                                " is not positive definite");
    }
    const Matrix K = -llt.solve(BtS * spec.A);
    const Matrix SXiP = Sn * spec.Xi + tb.P[t + 1];
    const Matrix Hbar = -llt.solve(spec.B.transpose() * SXiP);

    tb.M[t] = M;
    tb.K[t] = K;
    tb.Hbar[t] = Hbar;
    tb.S[t] = symmetrize(spec.Q[t] + spec.A.transpose() * Sn * spec.A -
                         (BtS * spec.A).transpose() * llt.solve(BtS * spec.A));
    tb.P[t] = (spec.A + spec.B * K).transpose() * SXiP;
    tb.N[t] = symmetrize(tb.N[t + 1] + spec.Xi.transpose() * Sn * spec.Xi +
                         tb.P[t + 1].transpose() * spec.Xi +
                         spec.Xi.transpose() * tb.P[t + 1] -
                         Hbar.transpose() * M * Hbar);
    tb.Gamma[t] =
        symmetrize(tb.Gamma[t + 1] + spec.Xi.transpose() * Sn * spec.Xi);
  }
  return tb;
}

// J*(mu, Sigma) = x0'S_0 x0 + 2 x0'P_0 mu + mu'N_0 mu + tr(Gamma_0 Sigma):
// the optimal expected cost over causal policies, which depends on the stage
// law through its first two moments only.
inline double fixed_law_value(const RiccatiTables& tables, const Vector& x0,
                              const MomentPair& law) {
  if (x0.size() != tables.S[0].rows()) {
    throw DimensionError("fixed_law_value: x0 length mismatch");
  }
  if (law.mu.size() != tables.P[0].cols() ||
      law.Sigma.rows() != tables.P[0].cols()) {
    throw DimensionError("fixed_law_value: law dimension mismatch");
  }
  return x0.dot(tables.S[0] * x0) + 2.0 * x0.dot(tables.P[0] * law.mu) +
         law.mu.dot(tables.N[0] * law.mu) +
         (tables.Gamma[0] * law.Sigma).trace();
}

// Certainty-equivalent control u_t = K_t x + Hbar_t mu.
inline Vector ce_gain_action(const RiccatiTables& tables, int t,
                             const Vector& x, const Vector& mu) {
  if (t < 0 || t >= tables.T) {
    throw DimensionError("ce_gain_action: time index " + std::to_string(t) +
                         " outside [0, " + std::to_string(tables.T) + ")");
  }
  if (x.size() != tables.K[t].cols() || mu.size() != tables.Hbar[t].cols()) {
    throw DimensionError("ce_gain_action: state or mean length mismatch");
  }
  return tables.K[t] * x + tables.Hbar[t] * mu;
}

}  // namespace drlqr

#endif  // DRLQR_LQR_HPP_
