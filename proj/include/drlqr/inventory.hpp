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

#ifndef DRLQR_INVENTORY_HPP_
#define DRLQR_INVENTORY_HPP_

#include <utility>

#include "drlqr/gelbrich.hpp"
#include "drlqr/lqr.hpp"

namespace drlqr {

// Scalar inventory-planning benchmark with AR(1) demand shocks. The state is
// the deviation pair (inventory deviation, demand deviation); ar_rho is the
// shock persistence. Named ar_rho to keep it apart from the dual scalar rho
// of the worst-case-cost program.
struct InventoryConfig {
  double ar_rho = 0.7;
  double h = 1.0;      // stage holding/backlog weight
  double h_T = 1.0;    // terminal weight
  double r = 0.25;     // order-rate weight
  double x0 = 1.0;     // initial inventory deviation
  double d0 = 0.0;     // initial demand deviation
  double mu_hat = 0.0;
  double sigma_hat = 0.5;
  int T = 20;
  double delta = 0.5;

  void validate() const {
    if (!(std::abs(ar_rho) < 1.0)) {
      throw ValidationError("inventory config: |ar_rho| must be < 1");
    }
    if (!(h >= 0.0) || !(h_T >= 0.0)) {
      throw ValidationError("inventory config: h and h_T must be >= 0");
    }
    if (!(r > 0.0)) throw ValidationError("inventory config: r must be > 0");
    if (!(sigma_hat > 0.0)) {
      throw ValidationError("inventory config: sigma_hat must be > 0");
    }
    if (T < 1) throw ValidationError("inventory config: T must be >= 1");
    if (!(delta >= 0.0)) {
      throw ValidationError("inventory config: delta must be >= 0");
    }
  }
};

/**
 * Builds the centered inventory model
 *
 *   z_{t+1} = [1  -ar_rho] z_t + [1] u_t + [-1] w_{t+1}
 *             [0   ar_rho]       [0]       [ 1]
 *
 * with stage cost h x_t^2 + r u_t^2 and terminal cost h_T x_T^2 (x = first
 * state coordinate), plus the Gelbrich ball centered at (mu_hat,
 * sigma_hat^2) with radius delta. The mean demand level and target inventory
 * only shift the raw order/stock variables, so they do not appear in the
 * centered dynamics.
 */
inline std::pair<SystemSpec, GelbrichBall> build_inventory(
    const InventoryConfig& cfg) {
  cfg.validate();
  SystemSpec spec;
  spec.A = Matrix{{1.0, -cfg.ar_rho}, {0.0, cfg.ar_rho}};
  spec.B = Matrix{{1.0}, {0.0}};
  spec.Xi = Matrix{{-1.0}, {1.0}};
  spec.QT = Matrix{{cfg.h_T, 0.0}, {0.0, 0.0}};
  Matrix Q{{cfg.h, 0.0}, {0.0, 0.0}};
  Matrix R{{cfg.r}};
  spec.Q.assign(cfg.T, Q);
  spec.R.assign(cfg.T, R);
  spec.x0 = Vector{{cfg.x0, cfg.d0}};
  spec.T = cfg.T;
  spec.validate();

  GelbrichBall ball;
  ball.mu_hat = Vector{{cfg.mu_hat}};
  ball.Sigma_hat = Matrix{{cfg.sigma_hat * cfg.sigma_hat}};
  ball.delta = cfg.delta;
  ball.validate();
  return {std::move(spec), std::move(ball)};
}

}  // namespace drlqr

#endif  // DRLQR_INVENTORY_HPP_
