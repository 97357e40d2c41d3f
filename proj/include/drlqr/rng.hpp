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

#ifndef DRLQR_RNG_HPP_
#define DRLQR_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>

#include "drlqr/linalg.hpp"

namespace drlqr {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 because the
// stream is fixed by this header, not by the standard library vendor, so
// simulation output is reproducible across toolchains. Gaussian variates use
// Box-Muller rather than std::normal_distribution for the same reason.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]: 53 random bits shifted into the mantissa, plus one,
  // so log() below never sees zero.
  double next_unit_positive() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = next_unit_positive();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(phi);
    have_cached_ = true;
    return r * std::cos(phi);
  }

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// Derives an independent per-stream seed from a master seed. Two SplitMix64
// scrambles decorrelate adjacent stream indices; the result seeds the
// generator for one simulation path, so path i draws the same variates no
// matter how paths are partitioned across workers.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 mixer(master ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
  mixer.next_u64();
  return mixer.next_u64();
}

// Samples from N(mu, Sigma) via the symmetric PSD square root of Sigma.
class GaussianSampler {
 public:
  GaussianSampler(const Vector& mu, const Matrix& sigma)
      : mu_(mu), sqrt_sigma_(sqrt_psd(sigma)) {}

  Vector sample(SplitMix64& rng) const {
    Vector z(mu_.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.next_gaussian();
    return mu_ + sqrt_sigma_ * z;
  }

  const Vector& mu() const { return mu_; }

 private:
  Vector mu_;
  Matrix sqrt_sigma_;
};

}  // namespace drlqr

#endif  // DRLQR_RNG_HPP_
