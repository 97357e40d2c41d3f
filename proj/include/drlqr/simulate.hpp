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

#ifndef DRLQR_SIMULATE_HPP_
#define DRLQR_SIMULATE_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "drlqr/errors.hpp"
#include "drlqr/linalg.hpp"
#include "drlqr/lqr.hpp"
#include "drlqr/rng.hpp"

namespace drlqr {

struct SimConfig {
  int n_paths = 10000;
  std::uint64_t seed = 0;
  MomentPair law;  // stage law sampled as Gaussian with these moments
  bool common_random_numbers = true;  // paired comparisons share path seeds

  void validate(const SystemSpec& spec) const {
    if (n_paths < 1) throw ValidationError("n_paths must be at least 1");
    law.validate();
    if (law.mu.size() != spec.d()) {
      throw DimensionError("simulation law dimension mismatch");
    }
  }
};

struct SimResult {
  double mean_cost = 0.0;
  double std_err = 0.0;
  std::vector<double> state_mean;  // length T+1, one state component
  std::vector<double> state_var;
  long n_paths = 0;
};

struct PairedDiff {
  double mean_diff = 0.0;  // first policy minus second
  double std_err = 0.0;
  long n_paths = 0;
};

namespace detail {

/** Welford accumulator: exact zero variance on identical inputs and a fixed,
 * order-dependent reduction so runs are reproducible. */
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  long count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  }
  double std_err() const {
    return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

enum class PathObjective { cost, regret };

/**
 * Rolls out one disturbance path and returns the realized objective: the
 * quadratic control cost, or the stagewise advantage sum
 * sum_t eta_t' M_t eta_t with eta_t = u_t - K_t x_t - Hbar_t mu measured
 * against the true stage mean, which estimates the regret pathwise and
 * never goes negative.
 */
template <class Policy>
double run_path(const SystemSpec& spec, const Policy& policy,
                const GaussianSampler& sampler, std::uint64_t path_seed,
                PathObjective objective, int component,
                std::vector<double>* states) {
  SplitMix64 rng(path_seed);
  const RiccatiTables& tables = *policy.tables;
  Vector x = spec.x0;
  std::vector<Vector> history;
  history.reserve(spec.T);
  double total = 0.0;
  if (states != nullptr) (*states)[0] = x[component];
  for (int t = 0; t < spec.T; ++t) {
    const Vector u = policy.action(t, x, history);
    if (objective == PathObjective::cost) {
      total += x.dot(spec.Q[t] * x) + u.dot(spec.R[t] * u);
    } else {
      const Vector eta = u - ce_gain_action(tables, t, x, sampler.mu());
      total += eta.dot(tables.M[t] * eta);
    }
    const Vector w = sampler.sample(rng);
    x = spec.A * x + spec.B * u + spec.Xi * w;
    history.push_back(w);
    if (states != nullptr) (*states)[t + 1] = x[component];
  }
  if (objective == PathObjective::cost) total += x.dot(spec.QT * x);
  return total;
}

template <class Policy>
SimResult simulate(const SystemSpec& spec, const Policy& policy,
                   const SimConfig& cfg, int component,
                   PathObjective objective) {
  spec.validate();
  cfg.validate(spec);
  policy.validate();
  if (component < 0 || component >= spec.n()) {
    throw DimensionError("state component index out of range");
  }
  const GaussianSampler sampler(cfg.law.mu, cfg.law.Sigma);
  RunningStats cost_stats;
  std::vector<RunningStats> state_stats(spec.T + 1);
  std::vector<double> states(spec.T + 1);
  for (int p = 0; p < cfg.n_paths; ++p) {
    const double value = run_path(spec, policy, sampler,
                                  derive_seed(cfg.seed, p), objective,
                                  component, &states);
    cost_stats.add(value);
    for (int t = 0; t <= spec.T; ++t) state_stats[t].add(states[t]);
  }
  SimResult out;
  out.mean_cost = cost_stats.mean();
  out.std_err = cost_stats.std_err();
  out.n_paths = cost_stats.count();
  out.state_mean.resize(spec.T + 1);
  out.state_var.resize(spec.T + 1);
  for (int t = 0; t <= spec.T; ++t) {
    out.state_mean[t] = state_stats[t].mean();
    out.state_var[t] = state_stats[t].variance();
  }
  return out;
}

}  // namespace detail

/** Monte Carlo estimate of the expected realized cost of a policy under the
 * configured stage law; deterministic given the seed. */
template <class Policy>
SimResult rollout_cost(const SystemSpec& spec, const Policy& policy,
                       const SimConfig& cfg) {
  return detail::simulate(spec, policy, cfg, 0,
                          detail::PathObjective::cost);
}

/** Monte Carlo estimate of the regret of a policy under the configured law,
 * through the stagewise advantage quadratics rather than a difference of
 * cost estimates; pathwise nonnegative and lower variance. */
template <class Policy>
SimResult empirical_regret(const SystemSpec& spec, const Policy& policy,
                           const SimConfig& cfg) {
  return detail::simulate(spec, policy, cfg, 0,
                          detail::PathObjective::regret);
}

/** Per-time sample mean and variance of one state coordinate. */
template <class Policy>
SimResult trajectory_stats(const SystemSpec& spec, const Policy& policy,
                           const SimConfig& cfg, int component) {
  return detail::simulate(spec, policy, cfg, component,
                          detail::PathObjective::cost);
}

/**
 * Estimates E[cost(first)] - E[cost(second)]. With common random numbers the
 * two policies see identical disturbance draws path by path and the
 * difference is averaged pathwise; otherwise the second policy consumes an
 * independent seed stream and the errors add in quadrature.
 */
template <class PolicyA, class PolicyB>
PairedDiff compare_costs(const SystemSpec& spec, const PolicyA& first,
                         const PolicyB& second, const SimConfig& cfg) {
  spec.validate();
  cfg.validate(spec);
  first.validate();
  second.validate();
  const GaussianSampler sampler(cfg.law.mu, cfg.law.Sigma);
  PairedDiff out;
  if (cfg.common_random_numbers) {
    detail::RunningStats diff;
    for (int p = 0; p < cfg.n_paths; ++p) {
      const std::uint64_t s = derive_seed(cfg.seed, p);
      const double ca = detail::run_path(spec, first, sampler, s,
                                         detail::PathObjective::cost, 0,
                                         nullptr);
      const double cb = detail::run_path(spec, second, sampler, s,
                                         detail::PathObjective::cost, 0,
                                         nullptr);
      diff.add(ca - cb);
    }
    out.mean_diff = diff.mean();
    out.std_err = diff.std_err();
    out.n_paths = diff.count();
  } else {
    detail::RunningStats sa, sb;
    for (int p = 0; p < cfg.n_paths; ++p) {
      sa.add(detail::run_path(spec, first, sampler, derive_seed(cfg.seed, p),
                              detail::PathObjective::cost, 0, nullptr));
      sb.add(detail::run_path(spec, second, sampler,
                              derive_seed(cfg.seed, cfg.n_paths + p),
                              detail::PathObjective::cost, 0, nullptr));
    }
    out.mean_diff = sa.mean() - sb.mean();
    out.std_err = std::sqrt(sa.std_err() * sa.std_err() +
                            sb.std_err() * sb.std_err());
    out.n_paths = sa.count();
  }
  return out;
}

}  // namespace drlqr

#endif  // DRLQR_SIMULATE_HPP_
