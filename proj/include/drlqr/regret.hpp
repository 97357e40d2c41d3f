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

#ifndef DRLQR_REGRET_HPP_
#define DRLQR_REGRET_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "drlqr/errors.hpp"
#include "drlqr/gelbrich.hpp"
#include "drlqr/linalg.hpp"
#include "drlqr/policy.hpp"

namespace drlqr {

// Tolerances of the scalar dual. The case split between the boundary and
// interior minimizer is rank-sensitive, so the thresholds are pinned here
// rather than left to callers:
//  - kTolIm: relative residual for deciding c in Im(beta I - Bcal);
//  - kKernelRel: eigenvalues of beta I - Bcal below kKernelRel * beta count
//    as kernel directions;
//  - kDplusClamp: Psi'_+(beta) in [-kDplusClamp, 0) snaps to 0, since the
//    boundary case holds exactly for regret-optimal policies and floating
//    point lands a hair below it.
inline constexpr double kTolIm = 1e-8;
inline constexpr double kKernelRel = 1e-10;
inline constexpr double kDplusClamp = 1e-10;

// The worst-case regret of a fixed policy over the ball,
//
//   sup { a + z'Bcal z + 2z'c + tr(Acal Sigma) :
//         ||z||^2 + B^2(Sigma, Sigma_hat) <= delta^2, Sigma >= 0 },
//
// equals inf_{gamma in D} Psi(gamma) for the one-dimensional convex dual
//
//   Psi(gamma) = a + gamma (delta^2 - tr Sigma_hat)
//              + c'(gamma I - Bcal)^{-1} c
//              + gamma^2 tr((gamma I - Acal)^{-1} Sigma_hat),
//
// whose domain D sits strictly above alpha = lmax(Acal) and at or above
// beta = lmax(Bcal): D = (alpha, inf) when alpha >= beta, [beta, inf) when
// alpha < beta and c lies in Im(beta I - Bcal) (the c-term switching to the
// pseudoinverse at gamma = beta), and (beta, inf) otherwise. This type
// caches the two eigendecompositions so Psi and Psi' are O(d) per call.
struct ScalarDual {
  RegretQuadratic quad;
  GelbrichBall ball;
  double alpha = 0.0;
  double beta = 0.0;
  bool beta_admissible = false;  // alpha < beta and c in Im(beta I - Bcal)
  double domain_lower = 0.0;     // max(alpha, beta)

  // Spectral caches: Acal = PA diag(evalsA) PA', Bcal = PB diag(evalsB) PB',
  // cB = PB'c, sigA_i = PA_i' Sigma_hat PA_i, kernelB flags eigenvalues of
  // Bcal within kKernelRel * beta of beta.
  Vector evalsA, evalsB, cB, sigA;
  Matrix evecsA, evecsB;
  std::vector<bool> kernelB;
  double trace_sigma_hat = 0.0;
};

namespace detail {

inline bool near_boundary(const ScalarDual& sd, double gamma) {
  return sd.beta_admissible &&
         std::abs(gamma - sd.beta) <= 1e-12 * (1.0 + sd.beta);
}

inline void check_domain(const ScalarDual& sd, double gamma) {
  if (near_boundary(sd, gamma)) return;
  if (!(gamma > sd.domain_lower)) {
    throw OutOfDomainError(
        "psi: gamma=" + std::to_string(gamma) + " outside the dual domain (" +
        std::to_string(sd.domain_lower) + ", inf)" +
        (sd.beta_admissible ? " u {beta}" : ""));
  }
}

}  // namespace detail

inline ScalarDual make_scalar_dual(const RegretQuadratic& quad,
                                   const GelbrichBall& ball) {
  ball.validate();
  const int d = ball.d();
  if (quad.c.size() != d || quad.Acal.rows() != d || quad.Bcal.rows() != d) {
    throw DimensionError("scalar dual: quadratic/ball dimension mismatch");
  }
  ScalarDual sd;
  sd.quad = quad;
  sd.ball = ball;
  sd.trace_sigma_hat = ball.Sigma_hat.trace();

  Eigen::SelfAdjointEigenSolver<Matrix> esA(symmetrize(quad.Acal));
  Eigen::SelfAdjointEigenSolver<Matrix> esB(symmetrize(quad.Bcal));
  sd.evalsA = esA.eigenvalues();
  sd.evecsA = esA.eigenvectors();
  sd.evalsB = esB.eigenvalues();
  sd.evecsB = esB.eigenvectors();
  sd.alpha = std::max(0.0, sd.evalsA.maxCoeff());
  sd.beta = std::max(0.0, sd.evalsB.maxCoeff());
  sd.domain_lower = std::max(sd.alpha, sd.beta);

  sd.cB = sd.evecsB.transpose() * quad.c;
  sd.sigA.resize(d);
  for (int i = 0; i < d; ++i) {
    sd.sigA[i] = sd.evecsA.col(i).dot(ball.Sigma_hat * sd.evecsA.col(i));
  }

  const double kernel_cut = kKernelRel * sd.beta;
  double kernel_mass = 0.0;
  sd.kernelB.resize(d);
  for (int i = 0; i < d; ++i) {
    sd.kernelB[i] = (sd.beta - sd.evalsB[i]) <= kernel_cut;
    if (sd.kernelB[i]) kernel_mass += sd.cB[i] * sd.cB[i];
  }
  const bool c_in_image =
      std::sqrt(kernel_mass) <= kTolIm * (1.0 + quad.c.norm());
  sd.beta_admissible = (sd.alpha < sd.beta) && c_in_image;
  return sd;
}

/**
 * Evaluates the scalar dual. At the admissible boundary gamma = beta the
 * c-term uses the pseudoinverse of beta I - Bcal, realized here by skipping
 * the kernel components (whose coefficients are below the image tolerance).
 */
inline double psi(const ScalarDual& sd, double gamma) {
  detail::check_domain(sd, gamma);
  const bool at_boundary = detail::near_boundary(sd, gamma);
  double value = sd.quad.a +
                 gamma * (sd.ball.delta * sd.ball.delta - sd.trace_sigma_hat);
  for (int i = 0; i < sd.cB.size(); ++i) {
    if (at_boundary && sd.kernelB[i]) continue;
    value += sd.cB[i] * sd.cB[i] / (gamma - sd.evalsB[i]);
  }
  for (int i = 0; i < sd.sigA.size(); ++i) {
    value += gamma * gamma * sd.sigA[i] / (gamma - sd.evalsA[i]);
  }
  return value;
}

/**
 * Psi'(gamma) = delta^2 - ||(gamma I - Bcal)^{-1} c||^2
 *             - tr(Acal^2 (gamma I - Acal)^{-2} Sigma_hat),
 * the right derivative Psi'_+(beta) at the admissible boundary (kernel
 * components of c skipped, matching the pseudoinverse in psi). Nondecreasing
 * on the domain since Psi is convex.
 */
inline double psi_prime(const ScalarDual& sd, double gamma) {
  detail::check_domain(sd, gamma);
  const bool at_boundary = detail::near_boundary(sd, gamma);
  double value = sd.ball.delta * sd.ball.delta;
  for (int i = 0; i < sd.cB.size(); ++i) {
    if (at_boundary && sd.kernelB[i]) continue;
    const double r = sd.cB[i] / (gamma - sd.evalsB[i]);
    value -= r * r;
  }
  for (int i = 0; i < sd.sigA.size(); ++i) {
    const double r = sd.evalsA[i] / (gamma - sd.evalsA[i]);
    value -= r * r * sd.sigA[i];
  }
  return value;
}

struct WorstCaseRegret {
  double value = 0.0;
  ScalarDual sd;
  double gamma_star = 0.0;
};

/**
 * Minimizes Psi over its domain. The boundary gamma* = beta wins when it is
 * admissible and Psi'_+(beta) >= 0 (values in [-1e-10, 0) are snapped to
 * zero); otherwise the unique interior root of the nondecreasing Psi' is
 * bracketed by doubling and then bisected until the bracket width falls
 * below 1e-12 * (1 + gamma).
 *
 * Degenerate inputs: a policy with Hbar_t = 0 for all t and zero gains has an
 * identically-zero quadratic; every admissible law is then worst-case and no
 * canonical representative exists, so this throws DegenerateZeroRegret. If
 * only the offsets are nonzero (a > 0, everything else zero) the regret is
 * the constant a; the infimum gamma -> 0 is not attained and the returned
 * gamma_star is 0 by convention.
 */
inline WorstCaseRegret worst_case_regret(const RegretQuadratic& quad,
                                         const GelbrichBall& ball) {
  ball.validate();
  if (!(ball.delta > 0.0)) {
    throw ValidationError("worst_case_regret requires delta > 0");
  }
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(ball.Sigma_hat),
                                             Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin <= 1e-10 * std::max(lmax, 0.0)) {
      throw SingularMatrixError(
          "worst_case_regret: Sigma_hat must be positive definite "
          "(min eigenvalue " +
          std::to_string(lmin) + ")");
    }
  }

  WorstCaseRegret out;
  out.sd = make_scalar_dual(quad, ball);
  const ScalarDual& sd = out.sd;

  if (sd.domain_lower == 0.0 && sd.quad.c.isZero(0.0)) {
    if (sd.quad.a == 0.0) {
      throw DegenerateZeroRegretError(
          "regret is identically zero on the ball (all Hbar_t = 0 and zero "
          "policy quadratic); every admissible law is worst-case");
    }
    out.value = sd.quad.a;
    out.gamma_star = 0.0;
    return out;
  }

  if (sd.beta_admissible) {
    double dplus = psi_prime(sd, sd.beta);
    if (dplus >= -kDplusClamp && dplus < 0.0) dplus = 0.0;
    if (dplus >= 0.0) {
      out.gamma_star = sd.beta;
      out.value = psi(sd, sd.beta);
      return out;
    }
  }

  double lo = sd.beta_admissible ? sd.beta : sd.domain_lower * (1.0 + 1e-12);
  double hi = sd.domain_lower + 1.0;
  int doublings = 0;
  while (psi_prime(sd, hi) <= 0.0) {
    hi *= 2.0;
    if (++doublings > 300) {
      throw ConvergenceError("worst_case_regret: could not bracket the root "
                             "of psi'");
    }
  }
  int iters = 0;
  while (hi - lo > 1e-12 * (1.0 + hi) && iters < 200) {
    const double mid = 0.5 * (lo + hi);
    if (psi_prime(sd, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iters;
  }
  out.gamma_star = 0.5 * (lo + hi);
  out.value = psi(sd, out.gamma_star);
  return out;
}

// Worst-case stage laws attaining the dual value. kernel_basis and
// mean_shift_norm are only populated in the boundary case, where the mean is
// free along ker(beta I - Bcal) at radius sqrt(Psi'_+(beta)).
struct WorstCase {
  double gamma_star = 0.0;
  double value = 0.0;
  Vector mu_star;
  Matrix Sigma_star;
  bool boundary = false;
  Matrix kernel_basis;              // d x (kernel dim), orthonormal columns
  double mean_shift_norm = 0.0;     // sqrt(Psi'_+(beta)) when boundary
  std::vector<Vector> alternate_means;
};

/**
 * Closed-form maximizers from the dual solution:
 *
 *   interior: z = (gamma I - Bcal)^{-1} c unique,
 *   boundary: z = (beta I - Bcal)^dagger c + v with v in ker(beta I - Bcal),
 *             ||v||^2 = Psi'_+(beta),
 *   either:   Sigma* = gamma^2 (gamma I - Acal)^{-1} Sigma_hat
 *                       (gamma I - Acal)^{-1}.
 *
 * Boundary output lists the two extreme means mu_hat + z0 +- s v1, where v1
 * is the top eigenvector of Bcal with its first nonzero coordinate made
 * positive so reruns emit identical artifacts.
 */
inline WorstCase worst_case_distribution(const ScalarDual& sd,
                                         double gamma_star) {
  const int d = sd.ball.d();
  WorstCase wc;
  wc.gamma_star = gamma_star;
  wc.kernel_basis = Matrix::Zero(d, 0);

  if (gamma_star == 0.0 && sd.domain_lower == 0.0) {
    // Constant-regret corner: the quadratic has only the offset term, so the
    // center itself (like every admissible law) attains the value.
    wc.value = sd.quad.a;
    wc.mu_star = sd.ball.mu_hat;
    wc.Sigma_star = sd.ball.Sigma_hat;
    wc.alternate_means = {wc.mu_star};
    return wc;
  }

  wc.boundary = detail::near_boundary(sd, gamma_star);
  wc.value = psi(sd, gamma_star);
  const double gamma = wc.boundary ? sd.beta : gamma_star;

  // Sigma* through the eigenbasis of Acal; gamma > alpha in both cases.
  Matrix scale = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    scale += (gamma / (gamma - sd.evalsA[i])) * sd.evecsA.col(i) *
             sd.evecsA.col(i).transpose();
  }
  wc.Sigma_star = symmetrize(scale * sd.ball.Sigma_hat * scale.transpose());

  Vector z = Vector::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (wc.boundary && sd.kernelB[i]) continue;
    z += (sd.cB[i] / (gamma - sd.evalsB[i])) * sd.evecsB.col(i);
  }

  if (!wc.boundary) {
    wc.mu_star = sd.ball.mu_hat + z;
    wc.alternate_means = {wc.mu_star};
    return wc;
  }

  int kernel_dim = 0;
  for (int i = 0; i < d; ++i) kernel_dim += sd.kernelB[i] ? 1 : 0;
  if (kernel_dim == 0) {
    throw KernelEmptyError(
        "boundary worst case with numerically empty kernel: beta=" +
        std::to_string(sd.beta) + ", closest eigenvalue gap " +
        std::to_string((sd.beta - sd.evalsB.maxCoeff())));
  }
  wc.kernel_basis.resize(d, kernel_dim);
  for (int i = 0, k = 0; i < d; ++i) {
    if (sd.kernelB[i]) wc.kernel_basis.col(k++) = sd.evecsB.col(i);
  }

  double dplus = psi_prime(sd, sd.beta);
  if (dplus < 0.0) dplus = 0.0;  // classification already settled on boundary
  wc.mean_shift_norm = std::sqrt(dplus);

  // Deterministic kernel direction: the eigenvector of the top eigenvalue
  // (eigenvalues ascend, so the last column), sign-fixed.
  Vector v1 = sd.evecsB.col(d - 1);
  const double vmax = v1.cwiseAbs().maxCoeff();
  for (int i = 0; i < d; ++i) {
    if (std::abs(v1[i]) > 1e-9 * vmax) {
      if (v1[i] < 0.0) v1 = -v1;
      break;
    }
  }

  if (wc.mean_shift_norm > 0.0) {
    wc.alternate_means = {sd.ball.mu_hat + z + wc.mean_shift_norm * v1,
                          sd.ball.mu_hat + z - wc.mean_shift_norm * v1};
  } else {
    wc.alternate_means = {sd.ball.mu_hat + z};
  }
  wc.mu_star = wc.alternate_means.front();
  return wc;
}

// Grid brute force for d=1: maximizes the inner objective over the disk
// enumeration. Converges to the dual value from below as the resolution
// grows; the circle samples make boundary maximizers visible early.
inline double brute_force_regret(const RegretQuadratic& quad,
                                 const GelbrichBall& ball, int resolution) {
  double best = -std::numeric_limits<double>::infinity();
  for (const MomentPair& m : grid(ball, resolution)) {
    best = std::max(best,
                    regret_value_at(quad, m.mu - ball.mu_hat, m.Sigma));
  }
  return best;
}

}  // namespace drlqr

#endif  // DRLQR_REGRET_HPP_
