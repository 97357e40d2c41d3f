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

// Brute-force dynamic-programming oracle for the optimal fixed-law value.
// Independent of the Riccati code path: value functions are fitted
// quadratics over sampled states and the stage minimization runs over an
// explicit control grid, so agreement with the closed form is evidence, not
// circularity.

#ifndef DRLQR_TESTS_SUPPORT_DP_ORACLE_HPP_
#define DRLQR_TESTS_SUPPORT_DP_ORACLE_HPP_

#include <limits>
#include <vector>

#include "drlqr/lqr.hpp"

namespace drlqr_test {

struct QuadraticValue {
  drlqr::Matrix S;
  drlqr::Vector b;
  double c = 0.0;

  double at(const drlqr::Vector& x) const {
    return x.dot(S * x) + 2.0 * b.dot(x) + c;
  }
};

// Fits V(x) = x'Sx + 2b'x + c to (state, value) samples by least squares.
inline QuadraticValue fit_quadratic(const std::vector<drlqr::Vector>& states,
                                    const drlqr::Vector& values) {
  const int n = static_cast<int>(states.front().size());
  const int n_quad = n * (n + 1) / 2;
  const int n_coef = n_quad + n + 1;
  drlqr::Matrix basis(states.size(), n_coef);
  for (std::size_t r = 0; r < states.size(); ++r) {
    const drlqr::Vector& x = states[r];
    int col = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        basis(r, col++) = (i == j) ? x[i] * x[j] : 2.0 * x[i] * x[j];
      }
    }
    for (int i = 0; i < n; ++i) basis(r, col++) = 2.0 * x[i];
    basis(r, col) = 1.0;
  }
  drlqr::Vector coef = basis.colPivHouseholderQr().solve(values);

  QuadraticValue q;
  q.S = drlqr::Matrix::Zero(n, n);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      q.S(i, j) = coef[col];
      q.S(j, i) = coef[col];
      ++col;
    }
  }
  q.b = coef.segment(col, n);
  q.c = coef[col + n];
  return q;
}

// Backward value iteration on a uniform scalar-control grid (m = 1). The
// one-step expectation of a quadratic under w ~ (mu, Sigma) is exact:
// E V(y + Xi w) = V(y + Xi mu) + tr(Xi'S Xi Sigma). Control-grid spacing is
// the only approximation, so the returned value upper-bounds the optimum by
// O(spacing^2) per stage.
inline double dp_value_oracle(const drlqr::SystemSpec& spec,
                              const drlqr::MomentPair& law, double u_lo,
                              double u_hi, int n_u,
                              const std::vector<drlqr::Vector>& states) {
  QuadraticValue v{spec.QT, drlqr::Vector::Zero(spec.n()), 0.0};
  for (int t = spec.T - 1; t >= 0; --t) {
    const double noise_term =
        (spec.Xi.transpose() * v.S * spec.Xi * law.Sigma).trace();
    const drlqr::Vector drift = spec.Xi * law.mu;
    drlqr::Vector values(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
      const drlqr::Vector& x = states[k];
      const drlqr::Vector base = spec.A * x + drift;
      const double stage_x = x.dot(spec.Q[t] * x);
      double best = std::numeric_limits<double>::infinity();
      for (int iu = 0; iu < n_u; ++iu) {
        const double u = u_lo + (u_hi - u_lo) * iu / (n_u - 1);
        const drlqr::Vector next = base + spec.B.col(0) * u;
        const double cand = stage_x + spec.R[t](0, 0) * u * u + v.at(next);
        if (cand < best) best = cand;
      }
      values[k] = best + noise_term;
    }
    v = fit_quadratic(states, values);
  }
  return v.at(spec.x0);
}

// Default state samples: the tensor grid {-2,-1,0,1,2}^n.
inline std::vector<drlqr::Vector> default_state_samples(int n) {
  std::vector<drlqr::Vector> states;
  const std::vector<double> axis = {-2.0, -1.0, 0.0, 1.0, 2.0};
  if (n == 1) {
    for (double a : axis) states.push_back(drlqr::Vector{{a}});
  } else if (n == 2) {
    for (double a : axis) {
      for (double b : axis) states.push_back(drlqr::Vector{{a, b}});
    }
  }
  return states;
}

}  // namespace drlqr_test

#endif  // DRLQR_TESTS_SUPPORT_DP_ORACLE_HPP_
