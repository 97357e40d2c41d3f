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

#ifndef DRLQR_LINALG_HPP_
#define DRLQR_LINALG_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <string>

#include "drlqr/errors.hpp"

namespace drlqr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Relative PSD tolerance used by all validation entry points: an eigenvalue
// is treated as nonnegative when it is >= -tol_psd * max(1, lambda_max).
inline constexpr double kTolPsd = 1e-9;

inline Matrix symmetrize(const Matrix& x) {
  return 0.5 * (x + x.transpose());
}

inline bool is_symmetric(const Matrix& x, double tol = 1e-12) {
  if (x.rows() != x.cols()) return false;
  const double scale = 1.0 + x.cwiseAbs().maxCoeff();
  return (x - x.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

// Throws unless `x` is square and symmetric within `tol` (relative).
inline void require_symmetric(const Matrix& x, const std::string& name,
                              double tol = 1e-9) {
  if (x.rows() != x.cols()) {
    throw DimensionError(name + " must be square, got " +
                         std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()));
  }
  if (!is_symmetric(x, tol)) {
    throw ValidationError(name + " is not symmetric within tolerance");
  }
}

// Throws unless `x` is symmetric PSD: min eigenvalue >= -tol * max(1, l_max).
inline void require_psd(const Matrix& x, const std::string& name,
                        double tol = kTolPsd) {
  require_symmetric(x, name, tol);
  if (x.rows() == 0) return;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(x),
                                           Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin < -tol * std::max(1.0, lmax)) {
    throw ValidationError(name + " is not PSD: min eigenvalue " +
                          std::to_string(lmin));
  }
}

// Throws unless `x` is symmetric positive definite.
inline void require_pd(const Matrix& x, const std::string& name,
                       double tol = kTolPsd) {
  require_symmetric(x, name, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(x),
                                           Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin <= tol * std::max(1.0, std::abs(lmax))) {
    throw ValidationError(name + " is not positive definite: min eigenvalue " +
                          std::to_string(lmin));
  }
}

// Symmetric PSD square root via eigendecomposition. Eigenvalues are clamped
// at max(lambda, 0) so tiny negative noise cannot produce NaNs.
inline Matrix sqrt_psd(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(x));
  Vector d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

// Moore-Penrose pseudoinverse of a symmetric matrix. Eigenvalues with
// |lambda| <= rel_threshold * max|lambda| are treated as zero.
inline Matrix pinv_sym(const Matrix& x, double rel_threshold = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(x));
  const Vector& d = es.eigenvalues();
  const double cutoff = rel_threshold * d.cwiseAbs().maxCoeff();
  Vector inv(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    inv[i] = std::abs(d[i]) > cutoff ? 1.0 / d[i] : 0.0;
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

inline double max_eigenvalue(const Matrix& x) {
  if (x.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(x),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline double min_eigenvalue(const Matrix& x) {
  if (x.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(x),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace drlqr

#endif  // DRLQR_LINALG_HPP_
