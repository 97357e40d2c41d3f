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

// Command-line harness around the inventory benchmark: synthesizes robust
// controllers and emits reproducible CSV/JSON artifacts for plotting.
// A config JSON mirrors the inventory parameters plus command parameters;
// explicit flags override file values. Errors leave a machine-readable JSON
// object on stderr and a nonzero exit code.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drlqr/bench.hpp"
#include "drlqr/serialize.hpp"
#include "drlqr/version.hpp"

namespace {

using drlqr::Json;

struct CliState {
  std::string config_path;
  std::string out_path;
  std::vector<double> deltas;  // repeatable --delta
  int horizon = 0;             // 0 keeps the config value
  int resolution = 41;
  int paths = 10000;
  std::uint64_t seed = 0;
  double tol = 0.0;  // 0 keeps the solver default
  std::string policy = "drro";

  bool horizon_set = false;
  bool resolution_set = false;
  bool paths_set = false;
  bool seed_set = false;
  bool tol_set = false;
  bool deltas_set = false;

  drlqr::InventoryConfig inventory;
  drlqr::SolverOptions solver;
};

void add_common_flags(CLI::App* cmd, CliState& st) {
  cmd->add_option("--config", st.config_path,
                  "JSON config mirroring the inventory parameters");
  cmd->add_option("--out", st.out_path, "output path (default: stdout)");
  cmd->add_option("--delta", st.deltas,
                  "ambiguity radius; repeat for sweep grids")
      ->each([&st](const std::string&) { st.deltas_set = true; });
  cmd->add_option("--horizon", st.horizon, "planning horizon T")
      ->each([&st](const std::string&) { st.horizon_set = true; });
  cmd->add_option("--resolution", st.resolution, "grid resolution per axis")
      ->each([&st](const std::string&) { st.resolution_set = true; });
  cmd->add_option("--paths", st.paths, "Monte Carlo path count")
      ->each([&st](const std::string&) { st.paths_set = true; });
  cmd->add_option("--seed", st.seed, "master RNG seed")
      ->each([&st](const std::string&) { st.seed_set = true; });
  cmd->add_option("--tol", st.tol, "interior-point convergence tolerance")
      ->each([&st](const std::string&) { st.tol_set = true; });
}

/** Loads the config file (if any), folds command parameters out of it, and
 * applies flag overrides. Flags always win over file values. */
void resolve_config(CliState& st) {
  Json file = Json::object();
  if (!st.config_path.empty()) {
    std::ifstream in(st.config_path);
    if (!in) throw drlqr::IoError("cannot open config: " + st.config_path);
    try {
      in >> file;
    } catch (const Json::exception& e) {
      throw drlqr::IoError(std::string("config is not valid JSON: ") +
                           e.what());
    }
    if (!file.is_object()) throw drlqr::IoError("config must be an object");
  }
  if (file.contains("deltas")) {
    if (!st.deltas_set) {
      st.deltas = file["deltas"].get<std::vector<double>>();
      st.deltas_set = true;
    }
    file.erase("deltas");
  }
  if (file.contains("resolution")) {
    if (!st.resolution_set) st.resolution = file["resolution"].get<int>();
    file.erase("resolution");
  }
  if (file.contains("paths")) {
    if (!st.paths_set) st.paths = file["paths"].get<int>();
    file.erase("paths");
  }
  if (file.contains("seed")) {
    if (!st.seed_set) st.seed = file["seed"].get<std::uint64_t>();
    file.erase("seed");
  }
  if (file.contains("tol")) {
    if (!st.tol_set) {
      st.tol = file["tol"].get<double>();
      st.tol_set = true;
    }
    file.erase("tol");
  }
  st.inventory = drlqr::inventory_config_from_json(file);
  if (st.horizon_set) st.inventory.T = st.horizon;
  if (st.deltas_set && !st.deltas.empty()) {
    st.inventory.delta = st.deltas.back();
  }
  if (st.tol_set) {
    st.solver.tol = st.tol;
    st.solver.loose_tol = std::max(st.solver.loose_tol, st.tol);
  }
}

void write_output(const CliState& st, const std::string& payload) {
  if (st.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(st.out_path, std::ios::binary);
  if (!out) throw drlqr::IoError("cannot open output: " + st.out_path);
  out << payload;
}

std::vector<double> sweep_deltas(const CliState& st) {
  if (st.deltas_set && !st.deltas.empty()) return st.deltas;
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
  return grid;
}

int run_command(const std::string& name, CliState& st) {
  resolve_config(st);
  const drlqr::InventoryConfig& cfg = st.inventory;
  if (name == "synthesize") {
    const drlqr::PolicyChoice choice =
        drlqr::policy_choice_from_string(st.policy);
    const drlqr::BenchContext ctx = drlqr::make_context(cfg);
    const drlqr::SynthesisResult result =
        drlqr::synthesize_choice(ctx, choice, st.solver);
    Json doc{{"toolkit_version", drlqr::kVersion},
             {"config_hash", drlqr::config_hash(cfg)},
             {"config", drlqr::to_json(cfg)},
             {"policy_choice", drlqr::to_string(choice)},
             {"synthesis", drlqr::to_json(result)}};
    write_output(st, doc.dump(2) + "\n");
  } else if (name == "worst-case") {
    const drlqr::WorstCaseReport report = drlqr::cmd_worst_case(
        cfg, drlqr::policy_choice_from_string(st.policy), st.solver);
    write_output(st,
                 drlqr::worst_case_report_json(report, cfg).dump(2) + "\n");
  } else if (name == "sweep") {
    write_output(st,
                 to_csv(drlqr::cmd_sweep(cfg, sweep_deltas(st), st.solver)));
  } else if (name == "heatmap") {
    write_output(st,
                 to_csv(drlqr::cmd_heatmap(cfg, st.resolution, st.solver)
                            .table));
  } else if (name == "trajectories") {
    write_output(
        st, to_csv(drlqr::cmd_trajectories(cfg, st.paths, st.seed,
                                           st.solver)));
  } else if (name == "lambda-compare") {
    write_output(st, to_csv(drlqr::cmd_lambda_compare(cfg, st.solver)));
  } else {
    throw drlqr::ValidationError("unknown command: " + name);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust LQR synthesis and evaluation toolkit"};
  app.set_version_flag("--version", drlqr::kVersion);
  app.require_subcommand(1);

  CliState st;
  const std::vector<std::string> names = {"synthesize",   "worst-case",
                                          "sweep",        "heatmap",
                                          "trajectories", "lambda-compare"};
  const std::vector<std::string> blurbs = {
      "solve one synthesis problem and emit JSON",
      "worst-case law of a policy under its own criterion (JSON)",
      "worst-case regret versus ambiguity radius (CSV)",
      "expected-cost comparison over the scalar ball (CSV)",
      "trajectory statistics under worst-case laws (CSV)",
      "recourse gains versus the noise feedforward (CSV)"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(names[i], blurbs[i]);
    add_common_flags(cmd, st);
    if (names[i] == "synthesize" || names[i] == "worst-case") {
      cmd->add_option("--policy", st.policy, "one of: ce, dro, drro");
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run_command(app.get_subcommands().front()->get_name(), st);
  } catch (const drlqr::Error& e) {
    std::cerr << Json{{"error", e.code()}, {"message", e.what()}}.dump()
              << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump()
              << std::endl;
    return 2;
  }
}
