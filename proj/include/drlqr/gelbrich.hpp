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

#ifndef DRLQR_GELBRICH_HPP_
#define DRLQR_GELBRICH_HPP_

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "drlqr/errors.hpp"
#include "drlqr/linalg.hpp"
#include "drlqr/lqr.hpp"

namespace drlqr {

// Ambiguity set over stage laws: all moment pairs (mu, Sigma) with
// ||mu - mu_hat||^2 + B^2(Sigma, Sigma_hat) <= delta^2, where B is the Bures
// distance between covariance matrices.
struct GelbrichBall {
  Vector mu_hat;
  Matrix Sigma_hat;
  double delta = 0.0;

  int d() const { return static_cast<int>(mu_hat.size()); }

  void validate() const {
    require_psd(Sigma_hat, "Sigma_hat");
    if (Sigma_hat.rows() != mu_hat.size()) {
      throw DimensionError("GelbrichBall: Sigma_hat size must match mu_hat");
    }
    if (!(delta >= 0.0)) throw ValidationError("delta must be >= 0");
  }

  MomentPair center() const { return MomentPair{mu_hat, Sigma_hat}; }
};

/**
 * Squared Bures distance between PSD matrices,
 *
 *   B^2(S1, S2) = tr(S1 + S2 - 2 (S2^{1/2} S1 S2^{1/2})^{1/2}),
 *
 * computed through symmetric eigendecompositions with eigenvalues clamped at
 * max(lambda, 0): the inner product matrix can pick up tiny negative
 * eigenvalues in floating point. The result is clamped to [0, inf) since the
 * distance is analytically nonnegative.
 */
inline double bures_sq(const Matrix& S1, const Matrix& S2) {
  require_psd(S1, "S1");
  require_psd(S2, "S2");
  if (S1.rows() != S2.rows()) {
    throw DimensionError("bures_sq: size mismatch");
  }
  const Matrix root2 = sqrt_psd(S2);
  const Matrix cross = sqrt_psd(root2 * S1 * root2);
  const double val = S1.trace() + S2.trace() - 2.0 * cross.trace();
  return std::max(val, 0.0);
}

// Squared Gelbrich distance ||mu1 - mu2||^2 + B^2(Sigma1, Sigma2); equals the
// squared 2-Wasserstein distance when both laws are Gaussian.
inline double gelbrich_sq(const MomentPair& m1, const MomentPair& m2) {
  if (m1.mu.size() != m2.mu.size()) {
    throw DimensionError("gelbrich_sq: dimension mismatch");
  }
  return (m1.mu - m2.mu).squaredNorm() + bures_sq(m1.Sigma, m2.Sigma);
}

inline bool contains(const GelbrichBall& ball, const MomentPair& m,
                     double tol) {
  return gelbrich_sq(m, ball.center()) <= ball.delta * ball.delta + tol;
}

namespace detail {

// One scalar-disturbance grid point in (mu, sigma) coordinates. Lattice
// points tile the bounding box with equal-area cells; the appended circle
// samples pin down extremizers that sit between lattice points but carry no
// area weight.
struct DiskPoint {
  double mu = 0.0;
  double sigma = 0.0;
  bool on_circle = false;
};

// Enumerates the d=1 ball: a resolution x resolution lattice over the
// bounding box [mu_hat - delta, mu_hat + delta] x [max(0, sigma_hat - delta),
// sigma_hat + delta], filtered by disk membership and sigma >= 0, plus
// 4*(resolution-1) angular samples of the circle itself. Angle counts double
// when the resolution doubles (401 -> 801), so refined grids are supersets
// and grid maxima are monotone in the resolution.
inline std::vector<DiskPoint> disk_points(const GelbrichBall& ball,
                                          int resolution) {
  ball.validate();
  if (ball.d() != 1) {
    throw UnsupportedDimensionError(
        "grid enumeration supports scalar disturbances only, got d=" +
        std::to_string(ball.d()));
  }
  if (resolution < 2) throw ValidationError("resolution must be >= 2");

  const double mu_hat = ball.mu_hat[0];
  const double sigma_hat = std::sqrt(std::max(ball.Sigma_hat(0, 0), 0.0));
  const double delta = ball.delta;
  std::vector<DiskPoint> pts;
  if (delta == 0.0) {
    pts.push_back({mu_hat, sigma_hat, false});
    return pts;
  }

  const double mu_lo = mu_hat - delta;
  const double mu_hi = mu_hat + delta;
  const double sg_lo = std::max(0.0, sigma_hat - delta);
  const double sg_hi = sigma_hat + delta;
  pts.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int i = 0; i < resolution; ++i) {
    const double mu = mu_lo + (mu_hi - mu_lo) * i / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double sg = sg_lo + (sg_hi - sg_lo) * j / (resolution - 1);
      const double dist2 =
          (mu - mu_hat) * (mu - mu_hat) + (sg - sigma_hat) * (sg - sigma_hat);
      if (dist2 <= delta * delta) pts.push_back({mu, sg, false});
    }
  }
  const int n_angles = 4 * (resolution - 1);
  for (int k = 0; k < n_angles; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_angles;
    const double mu = mu_hat + delta * std::cos(phi);
    const double sg = sigma_hat + delta * std::sin(phi);
    if (sg >= 0.0) pts.push_back({mu, sg, true});
  }
  return pts;
}

}  // namespace detail

// Grid enumeration of the d=1 ball as moment pairs (mu, sigma^2); brute-force
// oracles maximize over this list.
inline std::vector<MomentPair> grid(const GelbrichBall& ball, int resolution) {
  std::vector<MomentPair> out;
  for (const auto& p : detail::disk_points(ball, resolution)) {
    Vector mu(1);
    mu[0] = p.mu;
    Matrix Sigma(1, 1);
    Sigma(0, 0) = p.sigma * p.sigma;
    out.push_back(MomentPair{std::move(mu), std::move(Sigma)});
  }
  return out;
}

}  // namespace drlqr

#endif  // DRLQR_GELBRICH_HPP_
