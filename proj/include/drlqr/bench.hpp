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

// Benchmark commands over the inventory model: radius sweeps, cost heatmaps,
// recourse-gain comparisons, worst-case reports, and trajectory statistics.
// Each command is a pure function of its config and returns data structures
// the CLI serializes; repeated runs are byte-identical.

#ifndef DRLQR_BENCH_HPP_
#define DRLQR_BENCH_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "drlqr/errors.hpp"
#include "drlqr/gelbrich.hpp"
#include "drlqr/inventory.hpp"
#include "drlqr/lqr.hpp"
#include "drlqr/policy.hpp"
#include "drlqr/regret.hpp"
#include "drlqr/serialize.hpp"
#include "drlqr/simulate.hpp"
#include "drlqr/synthesis.hpp"

namespace drlqr {

enum class PolicyChoice { ce, dro, drro };

inline const char* to_string(PolicyChoice c) {
  switch (c) {
    case PolicyChoice::ce: return "ce";
    case PolicyChoice::dro: return "dro";
    case PolicyChoice::drro: return "drro";
  }
  return "unknown";
}

inline PolicyChoice policy_choice_from_string(const std::string& s) {
  if (s == "ce") return PolicyChoice::ce;
  if (s == "dro") return PolicyChoice::dro;
  if (s == "drro") return PolicyChoice::drro;
  throw ValidationError("unknown policy choice: " + s +
                        " (expected ce, dro, or drro)");
}

/** Inventory instance shared by all commands: system, solved Riccati
 * tables, and the ambiguity ball from the config. */
struct BenchContext {
  SystemSpec spec;
  std::shared_ptr<const RiccatiTables> tables;
  GelbrichBall ball;
};

inline BenchContext make_context(const InventoryConfig& cfg) {
  auto [spec, ball] = build_inventory(cfg);
  BenchContext ctx;
  ctx.tables = std::make_shared<RiccatiTables>(riccati(spec));
  ctx.spec = std::move(spec);
  ctx.ball = ball;
  return ctx;
}

inline SynthesisResult synthesize_choice(const BenchContext& ctx,
                                         PolicyChoice choice,
                                         const SolverOptions& opts = {}) {
  switch (choice) {
    case PolicyChoice::ce:
      return ce_synthesize(ctx.tables, ctx.ball);
    case PolicyChoice::dro:
      return dro_synthesize(ctx.tables, ctx.ball, ctx.spec.x0, opts);
    case PolicyChoice::drro:
      return drro_synthesize(ctx.tables, ctx.ball, opts);
  }
  throw ValidationError("unknown policy choice");
}

/** Worst-case regret of a fixed policy over the context's ball, with the
 * ball center as the regret reference. Zero radius means zero regret. */
inline double policy_worst_case_regret(const BenchContext& ctx,
                                       const RowSumPolicy& policy) {
  if (ctx.ball.delta == 0.0) return 0.0;
  return worst_case_regret(regret_quadratic_row_sum(policy, ctx.ball.mu_hat),
                           ctx.ball)
      .value;
}

/**
 * Radius sweep: for each radius, the worst-case regret of the reference
 * gain policy, of the policy minimizing worst-case expected cost, and of
 * the policy minimizing worst-case regret. Columns
 * (delta, regret_ce, regret_dro_policy, regret_drro).
 */
inline CsvTable cmd_sweep(const InventoryConfig& cfg,
                          const std::vector<double>& deltas,
                          const SolverOptions& opts = {}) {
  BenchContext ctx = make_context(cfg);
  CsvTable table;
  table.stamp(cfg, 0, opts.tol);
  table.columns = {"delta", "regret_ce", "regret_dro_policy", "regret_drro"};
  for (double delta : deltas) {
    if (delta < 0.0) throw ValidationError("sweep radius must be >= 0");
    if (delta == 0.0) {
      table.rows.push_back({0.0, 0.0, 0.0, 0.0});
      continue;
    }
    BenchContext at = ctx;
    at.ball.delta = delta;
    const double regret_ce = ce_synthesize(at.tables, at.ball).value;
    const SynthesisResult dro =
        dro_synthesize(at.tables, at.ball, at.spec.x0, opts);
    const double regret_dro = policy_worst_case_regret(at, dro.policy);
    const double regret_drro = drro_synthesize(at.tables, at.ball, opts).value;
    table.rows.push_back({delta, regret_ce, regret_dro, regret_drro});
  }
  return table;
}

struct HeatmapResult {
  CsvTable table;                  // (mu, sigma, cost_dro, cost_drro, diff)
  double ball_average_diff = 0.0;  // equal-area average over lattice points
  int interior_points = 0;
};

/**
 * Ambiguity-ball heatmap: exact expected cost of the two robust policies
 * at every grid point of the scalar ball, via the value function plus the
 * policy's regret quadratic (no sampling). Circle samples are emitted as
 * rows but carry no area weight in the ball average.
 */
inline HeatmapResult cmd_heatmap(const InventoryConfig& cfg, int resolution,
                                 const SolverOptions& opts = {}) {
  BenchContext ctx = make_context(cfg);
  const SynthesisResult dro =
      dro_synthesize(ctx.tables, ctx.ball, ctx.spec.x0, opts);
  const SynthesisResult drro = drro_synthesize(ctx.tables, ctx.ball, opts);
  const RegretQuadratic quad_dro =
      regret_quadratic_row_sum(dro.policy, ctx.ball.mu_hat);
  const RegretQuadratic quad_drro =
      regret_quadratic_row_sum(drro.policy, ctx.ball.mu_hat);

  HeatmapResult out;
  out.table.stamp(cfg, 0, opts.tol);
  out.table.columns = {"mu", "sigma", "cost_dro", "cost_drro", "diff"};
  double weighted_sum = 0.0;
  for (const auto& pt : detail::disk_points(ctx.ball, resolution)) {
    Vector mu(1);
    mu[0] = pt.mu;
    Matrix Sigma(1, 1);
    Sigma(0, 0) = pt.sigma * pt.sigma;
    const double base = fixed_law_value(*ctx.tables, ctx.spec.x0, {mu, Sigma});
    const Vector z = mu - ctx.ball.mu_hat;
    const double cost_dro = base + regret_value_at(quad_dro, z, Sigma);
    const double cost_drro = base + regret_value_at(quad_drro, z, Sigma);
    const double diff = cost_dro - cost_drro;
    out.table.rows.push_back({pt.mu, pt.sigma, cost_dro, cost_drro, diff});
    if (!pt.on_circle) {
      weighted_sum += diff;
      ++out.interior_points;
    }
  }
  if (out.interior_points > 0) {
    out.ball_average_diff = weighted_sum / out.interior_points;
  }
  out.table.metadata.emplace_back("ball_average_diff",
                                  format_double(out.ball_average_diff));
  out.table.metadata.emplace_back("interior_points",
                                  std::to_string(out.interior_points));
  return out;
}

/**
 * Per-stage comparison of the scalar recourse gains against the noise
 * feedforward: columns (t, lambda_drro_t, lambda_dro_t, hbar_t), with the
 * t = 0 rows zero by the recourse convention.
 */
inline CsvTable cmd_lambda_compare(const InventoryConfig& cfg,
                                   const SolverOptions& opts = {}) {
  BenchContext ctx = make_context(cfg);
  if (ctx.tables->m() != 1 || ctx.tables->d() != 1) {
    throw UnsupportedDimensionError(
        "recourse-gain comparison expects scalar action and noise");
  }
  const SynthesisResult drro = drro_synthesize(ctx.tables, ctx.ball, opts);
  const SynthesisResult dro =
      dro_synthesize(ctx.tables, ctx.ball, ctx.spec.x0, opts);

  CsvTable table;
  table.stamp(cfg, 0, opts.tol);
  table.metadata.emplace_back("achieved_horizon", std::to_string(cfg.T));
  table.columns = {"t", "lambda_drro_t", "lambda_dro_t", "hbar_t"};
  for (int t = 0; t < ctx.tables->T; ++t) {
    const double l_drro = t >= 1 ? drro.policy.Lambda[t - 1](0, 0) : 0.0;
    const double l_dro = t >= 1 ? dro.policy.Lambda[t - 1](0, 0) : 0.0;
    table.rows.push_back(
        {static_cast<double>(t), l_drro, l_dro, ctx.tables->Hbar[t](0, 0)});
  }
  return table;
}

struct WorstCaseReport {
  PolicyChoice choice = PolicyChoice::ce;
  SynthesisResult synthesis;
  WorstCase wc;
};

/**
 * Worst-case law of the named policy under its own criterion: the regret
 * maximizer for the reference and regret-robust policies, the expected-cost
 * maximizer for the cost-robust policy. Zero radius degenerates to the ball
 * center with the criterion evaluated there.
 */
inline WorstCaseReport cmd_worst_case(const InventoryConfig& cfg,
                                      PolicyChoice choice,
                                      const SolverOptions& opts = {}) {
  BenchContext ctx = make_context(cfg);
  WorstCaseReport out;
  out.choice = choice;
  out.synthesis = synthesize_choice(ctx, choice, opts);

  RegretQuadratic quad =
      regret_quadratic_row_sum(out.synthesis.policy, ctx.ball.mu_hat);
  if (choice == PolicyChoice::dro) {
    quad = cost_quadratic(*ctx.tables, quad, ctx.spec.x0, ctx.ball.mu_hat);
  }
  if (ctx.ball.delta == 0.0) {
    out.wc.gamma_star = 0.0;
    out.wc.value = regret_value_at(quad, Vector::Zero(ctx.ball.d()),
                                   ctx.ball.Sigma_hat);
    out.wc.mu_star = ctx.ball.mu_hat;
    out.wc.Sigma_star = ctx.ball.Sigma_hat;
    out.wc.boundary = false;
    return out;
  }
  const WorstCaseRegret solved = worst_case_regret(quad, ctx.ball);
  out.wc = worst_case_distribution(solved.sd, solved.gamma_star);
  return out;
}

inline Json worst_case_report_json(const WorstCaseReport& report,
                                   const InventoryConfig& cfg) {
  return Json{{"toolkit_version", kVersion},
              {"config_hash", config_hash(cfg)},
              {"config", to_json(cfg)},
              {"policy_choice", to_string(report.choice)},
              {"criterion", report.choice == PolicyChoice::dro
                                ? "expected_cost"
                                : "regret"},
              {"synthesis", to_json(report.synthesis)},
              {"worst_case", to_json(report.wc)}};
}

/**
 * Worst-case trajectory statistics: every policy simulated under its own
 * worst-case law. A boundary worst case has two extremal means; both are
 * emitted with deterministic plus/minus column suffixes, ordered by the sign
 * of the shift along the top eigenvector. Columns: t, then one
 * (mean_*, var_*) pair per policy/label.
 */
inline CsvTable cmd_trajectories(const InventoryConfig& cfg, int n_paths,
                                 std::uint64_t seed,
                                 const SolverOptions& opts = {}) {
  BenchContext ctx = make_context(cfg);
  CsvTable table;
  table.stamp(cfg, seed, opts.tol);
  table.metadata.emplace_back("paths", std::to_string(n_paths));
  table.columns = {"t"};
  table.rows.resize(ctx.spec.T + 1);
  for (int t = 0; t <= ctx.spec.T; ++t) {
    table.rows[t].push_back(static_cast<double>(t));
  }

  for (PolicyChoice choice :
       {PolicyChoice::ce, PolicyChoice::dro, PolicyChoice::drro}) {
    const WorstCaseReport report = cmd_worst_case(cfg, choice, opts);
    std::vector<std::pair<std::string, Vector>> laws;
    if (report.wc.boundary && report.wc.alternate_means.size() >= 2) {
      laws.emplace_back(std::string(to_string(choice)) + "_plus",
                        report.wc.alternate_means[0]);
      laws.emplace_back(std::string(to_string(choice)) + "_minus",
                        report.wc.alternate_means[1]);
    } else {
      laws.emplace_back(to_string(choice), report.wc.mu_star);
    }
    for (const auto& [label, mu] : laws) {
      SimConfig sim;
      sim.n_paths = n_paths;
      sim.seed = seed;
      sim.law = {mu, report.wc.Sigma_star};
      const SimResult stats =
          trajectory_stats(ctx.spec, report.synthesis.policy, sim, 0);
      table.columns.push_back("mean_" + label);
      table.columns.push_back("var_" + label);
      for (int t = 0; t <= ctx.spec.T; ++t) {
        table.rows[t].push_back(stats.state_mean[t]);
        table.rows[t].push_back(stats.state_var[t]);
      }
    }
  }
  return table;
}

}  // namespace drlqr

#endif  // DRLQR_BENCH_HPP_
