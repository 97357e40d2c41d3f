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

// Integration gate for the toolkit: fourteen end-to-end criteria covering
// value recursion, the advantage identity, dual-versus-brute-force regret,
// SDP tightness and dominance, worst-case attainment and nonuniqueness, the
// qualitative benchmark orderings, and byte-level reproducibility. Each
// criterion prints one PASS/FAIL line with its runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "drlqr/bench.hpp"
#include "drlqr/serialize.hpp"
#include "support/random_instances.hpp"

namespace drlqr {
namespace {

// Pinned scales and tolerances for the gate.
constexpr int kSmallHorizon = 5;
constexpr int kSweepHorizon = 20;
constexpr int kLongHorizon = 1000;  // recourse-convergence comparison
constexpr double kRadius = 0.5;
constexpr int kBruteResolution = 401;
constexpr int kHeatmapResolution = 41;
constexpr int kMonteCarloPaths = 100000;
constexpr double kRelBrute = 1e-3;    // grid oracle agreement
constexpr double kRelSdp = 1e-6;      // SDP vs scalar-dual tightness
constexpr double kRelNested = 1e-4;   // nested minimax oracle
constexpr double kRelAttain = 1e-8;   // worst-case attainment
constexpr double kRelAlternate = 1e-6;

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void report(int criterion, bool pass, double secs, const std::string& what) {
  std::printf("[CRITERION %2d] %s (%.2f s): %s\n", criterion,
              pass ? "PASS" : "FAIL", secs, what.c_str());
  std::fflush(stdout);
}

InventoryConfig config_at(int T, double delta) {
  InventoryConfig cfg;
  cfg.T = T;
  cfg.delta = delta;
  return cfg;
}

RowSumPolicy gain_policy(std::shared_ptr<const RiccatiTables> tables,
                         const Vector& anchor) {
  RowSumPolicy p;
  p.tables = std::move(tables);
  p.anchor = anchor;
  for (int t = 1; t < p.tables->T; ++t) {
    p.Lambda.push_back(Matrix::Zero(p.tables->m(), p.tables->d()));
  }
  return p;
}

const BenchContext& sweep_context() {
  static const BenchContext ctx =
      make_context(config_at(kSweepHorizon, kRadius));
  return ctx;
}

std::vector<double> sweep_radii() {
  std::vector<double> radii;
  for (int i = 1; i <= 10; ++i) radii.push_back(0.1 * i);
  return radii;
}

// The radius sweep shared by criteria 4, 5, and 8; solved once.
struct SweepData {
  std::vector<double> radii;
  std::vector<SynthesisResult> drro;
  std::vector<double> drro_oracle;  // scalar-dual regret of the DRRO policy
  double solve_seconds = 0.0;
};

const SweepData& sweep_data() {
  static const SweepData data = [] {
    SweepData d;
    d.radii = sweep_radii();
    const auto start = std::chrono::steady_clock::now();
    for (double delta : d.radii) {
      GelbrichBall ball = sweep_context().ball;
      ball.delta = delta;
      SynthesisResult r = drro_synthesize(sweep_context().tables, ball);
      d.drro_oracle.push_back(worst_case_regret(
                                  regret_quadratic_row_sum(r.policy,
                                                           ball.mu_hat),
                                  ball)
                                  .value);
      d.drro.push_back(std::move(r));
    }
    d.solve_seconds = seconds_since(start);
    return d;
  }();
  return data;
}

double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-10 * (1.0 + std::abs(a) + std::abs(b))) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

TEST(Acceptance, C01_ValueRecursionMatchesMonteCarlo) {
  const auto start = std::chrono::steady_clock::now();
  const BenchContext ctx = make_context(config_at(kSmallHorizon, kRadius));

  SimConfig sim;
  sim.n_paths = kMonteCarloPaths;
  sim.seed = 2026;
  sim.law = {Vector{{0.2}}, Matrix{{0.25}}};  // (mu, sigma) = (0.2, 0.5)
  const RowSumPolicy ce = gain_policy(ctx.tables, sim.law.mu);
  const SimResult r = rollout_cost(ctx.spec, ce, sim);
  const double expected = fixed_law_value(*ctx.tables, ctx.spec.x0, sim.law);

  const double secs = seconds_since(start);
  const bool pass = r.std_err > 0.0 &&
                    std::abs(r.mean_cost - expected) <= 3.0 * r.std_err &&
                    secs < 10.0;
  report(1, pass, secs,
         "Monte Carlo gain-policy cost within 3 std errs of the closed form");
  EXPECT_TRUE(pass) << "mean " << r.mean_cost << " vs " << expected
                    << " +- " << r.std_err;
}

TEST(Acceptance, C02_AdvantageIdentityAcrossRandomPolicies) {
  const auto start = std::chrono::steady_clock::now();
  const BenchContext ctx = make_context(config_at(kSmallHorizon, kRadius));
  SplitMix64 rng(7);
  bool pass = true;
  for (int trial = 0; trial < 20; ++trial) {
    const RowSumPolicy p = drlqr_test::random_row_sum_policy(
        ctx.tables, ctx.ball.mu_hat, rng, 0.5);
    SimConfig sim;
    sim.n_paths = kMonteCarloPaths;
    sim.seed = 100 + trial;
    sim.law = drlqr_test::random_in_ball_law(ctx.ball, rng);
    const SimResult r = empirical_regret(ctx.spec, p, sim);
    const double expected =
        regret_value_at(regret_quadratic_row_sum(p, ctx.ball.mu_hat),
                        sim.law.mu - ctx.ball.mu_hat, sim.law.Sigma);
    const bool ok = std::abs(r.mean_cost - expected) <= 3.0 * r.std_err;
    EXPECT_TRUE(ok) << "trial " << trial << ": " << r.mean_cost << " vs "
                    << expected << " +- " << r.std_err;
    pass = pass && ok;
  }
  const double secs = seconds_since(start);
  pass = pass && secs < 60.0;
  report(2, pass, secs,
         "sampled regret of 20 random policies within 3 std errs of the "
         "quadratic");
  EXPECT_TRUE(pass);
}

TEST(Acceptance, C03_ScalarDualMatchesBruteForceGrid) {
  const auto start = std::chrono::steady_clock::now();
  const BenchContext ctx = make_context(config_at(kSmallHorizon, kRadius));
  const RowSumPolicy ce = gain_policy(ctx.tables, ctx.ball.mu_hat);
  const RegretQuadratic quad = regret_quadratic_row_sum(ce, ctx.ball.mu_hat);

  const double dual = worst_case_regret(quad, ctx.ball).value;
  const double brute = brute_force_regret(quad, ctx.ball, kBruteResolution);

  const double secs = seconds_since(start);
  const bool pass =
      std::abs(dual - brute) <= kRelBrute * std::abs(brute) && secs < 5.0;
  report(3, pass, secs,
         "reference-policy dual regret equals the 401-point grid maximum");
  EXPECT_TRUE(pass) << dual << " vs " << brute;
}

TEST(Acceptance, C04_SdpValueIsTightAgainstTheScalarDual) {
  const SweepData& sweep = sweep_data();
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  for (std::size_t i = 0; i < sweep.radii.size(); ++i) {
    const double gap = std::abs(sweep.drro[i].value - sweep.drro_oracle[i]);
    const bool ok = gap <= kRelSdp * (1.0 + std::abs(sweep.drro[i].value));
    EXPECT_TRUE(ok) << "delta " << sweep.radii[i] << ": SDP "
                    << sweep.drro[i].value << " vs oracle "
                    << sweep.drro_oracle[i];
    pass = pass && ok;
  }
  const double secs = sweep.solve_seconds + seconds_since(start);
  pass = pass && secs < 60.0;
  report(4, pass, secs,
         "synthesis SDP value tight against the scalar dual at 10 radii");
  EXPECT_TRUE(pass);
}

TEST(Acceptance, C05_RegretRobustPolicyDominates) {
  const auto start = std::chrono::steady_clock::now();
  const SweepData& sweep = sweep_data();
  bool pass = true;
  for (std::size_t i = 0; i < sweep.radii.size(); ++i) {
    GelbrichBall ball = sweep_context().ball;
    ball.delta = sweep.radii[i];
    const double ce = ce_synthesize(sweep_context().tables, ball).value;
    const SynthesisResult dro = dro_synthesize(
        sweep_context().tables, ball, sweep_context().spec.x0);
    const double dro_regret =
        worst_case_regret(regret_quadratic_row_sum(dro.policy, ball.mu_hat),
                          ball)
            .value;
    const bool ok = sweep.drro[i].value <= ce + 1e-6 &&
                    sweep.drro[i].value <= dro_regret + 1e-6;
    EXPECT_TRUE(ok) << "delta " << sweep.radii[i] << ": drro "
                    << sweep.drro[i].value << ", ce " << ce << ", dro "
                    << dro_regret;
    pass = pass && ok;
  }
  const double secs = seconds_since(start);
  report(5, pass, secs,
         "robust-regret value below both baselines at every radius");
  EXPECT_TRUE(pass);
}

TEST(Acceptance, C06_NestedMinimaxOracleAtHorizonTwo) {
  const auto start = std::chrono::steady_clock::now();
  const BenchContext ctx = make_context(config_at(2, kRadius));
  const SynthesisResult drro = drro_synthesize(ctx.tables, ctx.ball);

  auto objective = [&](double lam) {
    RowSumPolicy p;
    p.tables = ctx.tables;
    p.anchor = ctx.ball.mu_hat;
    p.Lambda = {Matrix{{lam}}};
    return worst_case_regret(regret_quadratic_row_sum(p, ctx.ball.mu_hat),
                             ctx.ball)
        .value;
  };
  const double oracle = golden_section_min(objective, -8.0, 8.0);

  const double secs = seconds_since(start);
  const bool pass =
      std::abs(drro.value - oracle) <= kRelNested * std::abs(oracle) &&
      secs < 5.0;
  report(6, pass, secs,
         "synthesis equals the nested golden-section/dual oracle at T=2");
  EXPECT_TRUE(pass) << drro.value << " vs " << oracle;
}

TEST(Acceptance, C07_WorstCasePairsAttainTheDualValue) {
  const auto start = std::chrono::steady_clock::now();
  const InventoryConfig cfg = config_at(kSweepHorizon, kRadius);
  const BenchContext ctx = make_context(cfg);
  bool pass = true;
  for (PolicyChoice choice :
       {PolicyChoice::ce, PolicyChoice::dro, PolicyChoice::drro}) {
    const WorstCaseReport report_data = cmd_worst_case(cfg, choice);
    RegretQuadratic quad =
        regret_quadratic_row_sum(report_data.synthesis.policy, ctx.ball.mu_hat);
    if (choice == PolicyChoice::dro) {
      quad = cost_quadratic(*ctx.tables, quad, ctx.spec.x0, ctx.ball.mu_hat);
    }
    std::vector<Vector> means = report_data.wc.alternate_means;
    means.push_back(report_data.wc.mu_star);
    for (const Vector& mu : means) {
      const double dist = gelbrich_sq(
          {mu, report_data.wc.Sigma_star}, ctx.ball.center());
      const bool feasible =
          dist <= ctx.ball.delta * ctx.ball.delta * (1.0 + kRelAttain) +
                      kRelAttain;
      const double attained =
          regret_value_at(quad, mu - ctx.ball.mu_hat,
                          report_data.wc.Sigma_star);
      const bool attains =
          std::abs(attained - report_data.wc.value) <=
          kRelAttain * (1.0 + std::abs(report_data.wc.value));
      EXPECT_TRUE(feasible && attains)
          << to_string(choice) << ": dist^2 " << dist << ", attained "
          << attained << " vs " << report_data.wc.value;
      pass = pass && feasible && attains;
    }
  }
  const double secs = seconds_since(start);
  report(7, pass, secs,
         "every emitted worst-case pair is feasible and attains the value");
  EXPECT_TRUE(pass);
}

TEST(Acceptance, C08_RobustPolicyWorstCaseIsBoundaryAndNonunique) {
  const auto start = std::chrono::steady_clock::now();
  const SweepData& sweep = sweep_data();
  bool pass = true;
  for (std::size_t i = 0; i < sweep.radii.size(); ++i) {
    if (sweep.drro[i].value <= 1e-10) continue;
    GelbrichBall ball = sweep_context().ball;
    ball.delta = sweep.radii[i];
    const RegretQuadratic quad =
        regret_quadratic_row_sum(sweep.drro[i].policy, ball.mu_hat);
    const WorstCaseRegret solved = worst_case_regret(quad, ball);
    const WorstCase wc = worst_case_distribution(solved.sd, solved.gamma_star);

    bool ok = wc.boundary &&
              std::abs(wc.gamma_star - solved.sd.beta) <=
                  1e-8 * (1.0 + std::abs(solved.sd.beta)) &&
              wc.alternate_means.size() >= 2;
    if (ok) {
      ok = (wc.alternate_means[0] - wc.alternate_means[1]).norm() > 1e-12;
      for (const Vector& mu : wc.alternate_means) {
        const double attained =
            regret_value_at(quad, mu - ball.mu_hat, wc.Sigma_star);
        ok = ok && std::abs(attained - wc.value) <=
                       kRelAlternate * (1.0 + std::abs(wc.value));
      }
    }
    EXPECT_TRUE(ok) << "delta " << sweep.radii[i];
    pass = pass && ok;
  }
  const double secs = seconds_since(start);
  report(8, pass, secs,
         "robust policy's worst case is a boundary law with >= 2 extremal "
         "means");
  EXPECT_TRUE(pass);
}

TEST(Acceptance, C09_InitialActionCoincidesWithTheReference) {
  const auto start = std::chrono::steady_clock::now();
  const BenchContext& ctx = sweep_context();
  const SynthesisResult drro = drro_synthesize(ctx.tables, ctx.ball);
  SplitMix64 rng(17);
  bool pass = true;
  for (int trial = 0; trial < 4; ++trial) {
    Vector x = ctx.spec.x0;
    if (trial > 0) x = drlqr_test::random_matrix(ctx.spec.n(), 1, rng);
    const Vector u = drro.policy.action(0, x, {});
    const Vector u_ref = ce_gain_action(*ctx.tables, 0, x, ctx.ball.mu_hat);
    const bool ok = (u - u_ref).lpNorm<Eigen::Infinity>() <= 1e-12 &&
                    u[0] == u_ref[0];  // same formula path, bitwise equal
    EXPECT_TRUE(ok);
    pass = pass && ok;
  }
  const double secs = seconds_since(start);
  report(9, pass, secs,
         "robust initial action equals the reference action bitwise");
  EXPECT_TRUE(pass);
}

TEST(Acceptance, C10_ZeroRadiusCollapsesToTheNominalController) {
  const auto start = std::chrono::steady_clock::now();
  const BenchContext ctx = make_context(config_at(kSweepHorizon, 0.0));
  const SynthesisResult drro = drro_synthesize(ctx.tables, ctx.ball);
  const SynthesisResult dro =
      dro_synthesize(ctx.tables, ctx.ball, ctx.spec.x0);

  bool pass = drro.value == 0.0;
  for (const Matrix& l : drro.policy.Lambda) pass = pass && l.isZero(0.0);
  for (const Matrix& l : dro.policy.Lambda) pass = pass && l.isZero(0.0);
  pass = pass && dro.policy.anchor == ctx.ball.mu_hat &&
         dro.theta == ctx.ball.mu_hat;
  const double nominal = fixed_law_value(
      *ctx.tables, ctx.spec.x0, {ctx.ball.mu_hat, ctx.ball.Sigma_hat});
  pass = pass && std::abs(dro.value - nominal) <= 1e-10 * (1.0 + nominal);

  const double secs = seconds_since(start);
  report(10, pass, secs,
         "zero radius gives zero regret, zero recourse, and the nominal "
         "value");
  EXPECT_TRUE(pass);
}

TEST(Acceptance, C11_CostRobustValueMatchesTheGridOracle) {
  const auto start = std::chrono::steady_clock::now();
  const BenchContext ctx = make_context(config_at(kSmallHorizon, kRadius));
  const SynthesisResult dro =
      dro_synthesize(ctx.tables, ctx.ball, ctx.spec.x0);
  const RegretQuadratic quad =
      regret_quadratic_row_sum(dro.policy, ctx.ball.mu_hat);

  double grid_max = 0.0;
  for (const MomentPair& law : grid(ctx.ball, kBruteResolution)) {
    const double cost =
        fixed_law_value(*ctx.tables, ctx.spec.x0, law) +
        regret_value_at(quad, law.mu - ctx.ball.mu_hat, law.Sigma);
    grid_max = std::max(grid_max, cost);
  }

  const double secs = seconds_since(start);
  const bool pass =
      std::abs(dro.value - grid_max) <= kRelBrute * std::abs(grid_max);
  report(11, pass, secs,
         "cost-robust SDP value equals the 401-point grid maximum cost");
  EXPECT_TRUE(pass) << dro.value << " vs " << grid_max;
}

TEST(Acceptance, C12_RecourseGainsConvergeOnlyForTheRegretPolicy) {
  const auto start = std::chrono::steady_clock::now();
  const CsvTable table =
      cmd_lambda_compare(config_at(kLongHorizon, kRadius));
  const auto& tail = table.rows.back();
  const double drro_gap = std::abs(tail[1] - tail[3]);
  const double dro_gap = std::abs(tail[2] - tail[3]);

  const double secs = seconds_since(start);
  const bool pass = drro_gap < dro_gap && secs < 600.0;
  char line[160];
  std::snprintf(line, sizeof(line),
                "tail recourse gap %.3g (regret-robust) < %.3g (cost-robust) "
                "at horizon %d",
                drro_gap, dro_gap, kLongHorizon);
  report(12, pass, secs, line);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, C13_CostRobustLosesOnAverageOverTheBall) {
  const auto start = std::chrono::steady_clock::now();
  const HeatmapResult heat = cmd_heatmap(
      config_at(kSweepHorizon, kRadius), kHeatmapResolution);
  const double secs = seconds_since(start);
  const bool pass = heat.ball_average_diff > 0.0 && heat.interior_points > 0;
  char line[160];
  std::snprintf(line, sizeof(line),
                "area-weighted mean cost advantage %.6g over %d grid points",
                heat.ball_average_diff, heat.interior_points);
  report(13, pass, secs, line);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, C14_ArtifactsAreByteIdenticalAcrossReruns) {
  const auto start = std::chrono::steady_clock::now();
  const InventoryConfig sweep_cfg = config_at(kSweepHorizon, kRadius);
  const InventoryConfig traj_cfg = config_at(6, kRadius);

  const bool sweep_ok = to_csv(cmd_sweep(sweep_cfg, sweep_radii())) ==
                        to_csv(cmd_sweep(sweep_cfg, sweep_radii()));
  const bool heat_ok =
      to_csv(cmd_heatmap(sweep_cfg, kHeatmapResolution).table) ==
      to_csv(cmd_heatmap(sweep_cfg, kHeatmapResolution).table);
  const bool lambda_ok = to_csv(cmd_lambda_compare(sweep_cfg)) ==
                         to_csv(cmd_lambda_compare(sweep_cfg));
  const bool traj_ok = to_csv(cmd_trajectories(traj_cfg, 10000, 0)) ==
                       to_csv(cmd_trajectories(traj_cfg, 10000, 0));

  const double secs = seconds_since(start);
  const bool pass = sweep_ok && heat_ok && lambda_ok && traj_ok;
  report(14, pass, secs,
         "sweep, heatmap, recourse, and trajectory artifacts reproduce "
         "byte-identically");
  EXPECT_TRUE(pass) << "sweep " << sweep_ok << ", heatmap " << heat_ok
                    << ", lambda " << lambda_ok << ", trajectories "
                    << traj_ok;
}

}  // namespace
}  // namespace drlqr
