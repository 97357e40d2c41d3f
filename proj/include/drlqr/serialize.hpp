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

// JSON and CSV serialization of configs, policies, and results. All numeric
// CSV output is printed with 17 significant digits so doubles round-trip
// exactly and reruns with identical configs are byte-identical.

#ifndef DRLQR_SERIALIZE_HPP_
#define DRLQR_SERIALIZE_HPP_

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "drlqr/errors.hpp"
#include "drlqr/inventory.hpp"
#include "drlqr/linalg.hpp"
#include "drlqr/policy.hpp"
#include "drlqr/regret.hpp"
#include "drlqr/synthesis.hpp"
#include "drlqr/version.hpp"

namespace drlqr {

using Json = nlohmann::json;

/** 64-bit FNV-1a hash, used to stamp artifacts with their config. */
inline std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/** Shortest text that parses back to the same double (17 significant
 * digits), with a fixed C locale independent of the environment. */
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline Json to_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw IoError("expected a JSON array for a vector");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw IoError("expected a JSON array of rows for a matrix");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw IoError("ragged JSON matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

inline Json to_json(const InventoryConfig& cfg) {
  return Json{{"ar_rho", cfg.ar_rho}, {"h", cfg.h},
              {"h_T", cfg.h_T},       {"r", cfg.r},
              {"x0", cfg.x0},         {"d0", cfg.d0},
              {"mu_hat", cfg.mu_hat}, {"sigma_hat", cfg.sigma_hat},
              {"T", cfg.T},           {"delta", cfg.delta}};
}

/** Reads an inventory config from JSON; absent keys keep their defaults and
 * unknown keys are rejected so typos cannot silently revert to defaults. */
inline InventoryConfig inventory_config_from_json(const Json& j) {
  if (!j.is_object()) throw IoError("config must be a JSON object");
  InventoryConfig cfg;
  static const char* const known[] = {"ar_rho", "h",      "h_T",
                                      "r",      "x0",     "d0",
                                      "mu_hat", "sigma_hat", "T", "delta"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw IoError("unknown config key: " + item.key());
  }
  cfg.ar_rho = j.value("ar_rho", cfg.ar_rho);
  cfg.h = j.value("h", cfg.h);
  cfg.h_T = j.value("h_T", cfg.h_T);
  cfg.r = j.value("r", cfg.r);
  cfg.x0 = j.value("x0", cfg.x0);
  cfg.d0 = j.value("d0", cfg.d0);
  cfg.mu_hat = j.value("mu_hat", cfg.mu_hat);
  cfg.sigma_hat = j.value("sigma_hat", cfg.sigma_hat);
  cfg.T = j.value("T", cfg.T);
  cfg.delta = j.value("delta", cfg.delta);
  return cfg;
}

/** Canonical hash of a config: nlohmann objects serialize with sorted keys,
 * so the digest is independent of construction order. */
inline std::string config_hash(const InventoryConfig& cfg) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json(cfg).dump())));
  return std::string("fnv1a:") + buf;
}

inline Json to_json(const RowSumPolicy& p) {
  Json lambdas = Json::array();
  for (const Matrix& l : p.Lambda) lambdas.push_back(to_json(l));
  return Json{{"type", "row_sum"},
              {"horizon", p.tables->T},
              {"n_actions", p.tables->m()},
              {"n_disturbances", p.tables->d()},
              {"anchor", to_json(p.anchor)},
              {"Lambda", std::move(lambdas)}};
}

inline Json to_json(const WorstCase& wc) {
  Json alternates = Json::array();
  for (const Vector& mu : wc.alternate_means) alternates.push_back(to_json(mu));
  return Json{{"gamma_star", wc.gamma_star},
              {"value", wc.value},
              {"boundary", wc.boundary},
              {"mu_star", to_json(wc.mu_star)},
              {"Sigma_star", to_json(wc.Sigma_star)},
              {"mean_shift_norm", wc.mean_shift_norm},
              {"alternate_means", std::move(alternates)}};
}

inline Json to_json(const SolverStats& st) {
  return Json{{"iterations", st.iterations}, {"primal_res", st.primal_res},
              {"dual_res", st.dual_res},     {"rel_gap", st.rel_gap},
              {"primal_obj", st.primal_obj}, {"dual_obj", st.dual_obj},
              {"loosened", st.loosened}};
}

inline Json to_json(const SynthesisResult& r) {
  return Json{{"value", r.value},
              {"gamma", r.gamma},
              {"theta", to_json(r.theta)},
              {"policy", to_json(r.policy)},
              {"solver_status", to_string(r.solver_status)},
              {"solver", to_json(r.solver_stats)}};
}

/**
 * A CSV artifact: '#'-prefixed metadata lines (config hash, seed, tolerances,
 * version), then a column header, then rows of 17-digit numbers. Rerunning a
 * command with the same config reproduces the bytes exactly.
 */
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void stamp(const InventoryConfig& cfg, std::uint64_t seed, double tol) {
    metadata.emplace_back("toolkit_version", kVersion);
    metadata.emplace_back("config_hash", config_hash(cfg));
    metadata.emplace_back("config", to_json(cfg).dump());
    metadata.emplace_back("seed", std::to_string(seed));
    metadata.emplace_back("solver_tol", format_double(tol));
    metadata.emplace_back("rng", kRngName);
  }
};

inline std::string to_csv(const CsvTable& table) {
  std::string out;
  for (const auto& [key, value] : table.metadata) {
    out += "# " + key + ": " + value + "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw IoError("CSV row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace drlqr

#endif  // DRLQR_SERIALIZE_HPP_
