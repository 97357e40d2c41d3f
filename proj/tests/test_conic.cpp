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

#include "drlqr/conic_solver.hpp"

#include <gtest/gtest.h>

#include "drlqr/rng.hpp"
#include "support/random_instances.hpp"

namespace drlqr {
namespace {

// min x s.t. x >= 1, written as -x + s = -1 with s in the orthant.
ConicProblem tiny_lp() {
  ConicProblem prob;
  prob.c = Vector::Constant(1, 1.0);
  prob.triplets.emplace_back(0, 0, -1.0);
  prob.b = Vector::Constant(1, -1.0);
  prob.cones.push_back({ConeKind::nonneg, 1});
  return prob;
}

TEST(SvecTest, RoundTripsAndPreservesInnerProducts) {
  SplitMix64 rng(1);
  const Matrix x = drlqr_test::random_psd(4, rng);
  const Matrix y = drlqr_test::random_psd(4, rng);
  EXPECT_LE((smat(svec(x), 4) - x).norm(), 1e-14);
  EXPECT_NEAR(svec(x).dot(svec(y)), (x * y).trace(), 1e-12);
  EXPECT_EQ(svec(x).size(), svec_dim(4));
}

TEST(ConicProblemTest, ValidationCatchesMalformedInput) {
  ConicProblem prob = tiny_lp();
  EXPECT_NO_THROW(prob.validate());

  ConicProblem no_cones = prob;
  no_cones.cones.clear();
  EXPECT_THROW(no_cones.validate(), BadProblemError);

  ConicProblem bad_rhs = prob;
  bad_rhs.b = Vector::Zero(3);
  EXPECT_THROW(bad_rhs.validate(), BadProblemError);

  ConicProblem unused_var = prob;
  unused_var.c = Vector::Zero(2);
  EXPECT_THROW(unused_var.validate(), BadProblemError);

  ConicProblem bad_index = prob;
  bad_index.triplets.emplace_back(5, 0, 1.0);
  EXPECT_THROW(bad_index.validate(), BadProblemError);

  EXPECT_FALSE(prob.debug_dump().empty());
}

TEST(ConicSolverTest, SolvesBoundLp) {
  ConicSolution sol = solve_conic(tiny_lp());
  ASSERT_EQ(sol.status, SolveStatus::optimal);
  EXPECT_NEAR(sol.x[0], 1.0, 1e-7);
  EXPECT_NEAR(sol.stats.primal_obj, 1.0, 1e-7);
  EXPECT_LE(sol.stats.rel_gap, 1e-6);
}

TEST(ConicSolverTest, SolvesLpWithEqualities) {
  // min x0 + 2 x1 s.t. x0 + x1 = 1, x >= 0; optimum (1, 0) with value 1.
  ConicProblem prob;
  prob.c = Vector(2);
  prob.c << 1.0, 2.0;
  prob.cones.push_back({ConeKind::zero, 1});
  prob.cones.push_back({ConeKind::nonneg, 2});
  prob.triplets.emplace_back(0, 0, 1.0);
  prob.triplets.emplace_back(0, 1, 1.0);
  prob.triplets.emplace_back(1, 0, -1.0);
  prob.triplets.emplace_back(2, 1, -1.0);
  prob.b = Vector::Zero(3);
  prob.b[0] = 1.0;
  ConicSolution sol = solve_conic(prob);
  ASSERT_EQ(sol.status, SolveStatus::optimal);
  EXPECT_NEAR(sol.x[0], 1.0, 1e-6);
  EXPECT_NEAR(sol.x[1], 0.0, 1e-6);
}

// min tr(X) s.t. X >= I in S^2, variables svec(X); optimum X = I.
TEST(ConicSolverTest, SolvesIdentityLowerBoundSdp) {
  ConicProblem prob;
  prob.c = svec(Matrix::Identity(2, 2));
  prob.cones.push_back({ConeKind::psd, 2});
  for (int i = 0; i < 3; ++i) prob.triplets.emplace_back(i, i, -1.0);
  prob.b = -svec(Matrix::Identity(2, 2));
  ConicSolution sol = solve_conic(prob);
  ASSERT_EQ(sol.status, SolveStatus::optimal);
  EXPECT_NEAR(sol.stats.primal_obj, 2.0, 1e-6);
  const Matrix x = smat(sol.x, 2);
  EXPECT_NEAR(x(0, 0), 1.0, 1e-5);
  EXPECT_NEAR(x(1, 1), 1.0, 1e-5);
  EXPECT_NEAR(x(0, 1), 0.0, 1e-5);
}

// min t s.t. t I - M >= 0 recovers the top eigenvalue of M.
TEST(ConicSolverTest, ExtremalEigenvalueSdpMatchesEigenSolver) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const int k = 3 + (trial % 2);
    const Matrix m = drlqr_test::random_psd(k, rng, 1.5);
    ConicProblem prob;
    prob.c = Vector::Constant(1, 1.0);
    prob.cones.push_back({ConeKind::psd, k});
    const Vector id = svec_identity(k);
    for (int r = 0; r < id.size(); ++r) {
      if (id[r] != 0.0) prob.triplets.emplace_back(r, 0, -id[r]);
    }
    prob.b = -svec(m);
    ConicSolution sol = solve_conic(prob);
    ASSERT_EQ(sol.status, SolveStatus::optimal) << "trial " << trial;
    EXPECT_NEAR(sol.x[0], max_eigenvalue(m), 1e-6 * (1.0 + max_eigenvalue(m)))
        << "trial " << trial;
  }
}

TEST(ConicSolverTest, MixedOrthantAndSdpCones) {
  // min t + u s.t. t >= 3 and u I >= [[0,1],[1,0]]; optimum 3 + 1.
  ConicProblem prob;
  prob.c = Vector::Ones(2);
  prob.cones.push_back({ConeKind::nonneg, 1});
  prob.cones.push_back({ConeKind::psd, 2});
  prob.triplets.emplace_back(0, 0, -1.0);
  Matrix flip(2, 2);
  flip << 0.0, 1.0, 1.0, 0.0;
  const Vector id = svec_identity(2);
  for (int r = 0; r < 3; ++r) {
    if (id[r] != 0.0) prob.triplets.emplace_back(1 + r, 1, -id[r]);
  }
  prob.b = Vector(4);
  prob.b[0] = -3.0;
  prob.b.tail(3) = -svec(flip);
  ConicSolution sol = solve_conic(prob);
  ASSERT_EQ(sol.status, SolveStatus::optimal);
  EXPECT_NEAR(sol.x[0], 3.0, 1e-6);
  EXPECT_NEAR(sol.x[1], 1.0, 1e-6);
}

TEST(ConicSolverTest, EqualityPinnedSdp) {
  // min tr(X) s.t. X >= 0, X(0,0) = 1 in S^2; optimum tr = 1.
  ConicProblem prob;
  prob.c = svec(Matrix::Identity(2, 2));
  prob.cones.push_back({ConeKind::zero, 1});
  prob.cones.push_back({ConeKind::psd, 2});
  prob.triplets.emplace_back(0, 0, 1.0);  // X(0,0) = 1
  for (int i = 0; i < 3; ++i) prob.triplets.emplace_back(1 + i, i, -1.0);
  prob.b = Vector::Zero(4);
  prob.b[0] = 1.0;
  ConicSolution sol = solve_conic(prob);
  ASSERT_EQ(sol.status, SolveStatus::optimal);
  EXPECT_NEAR(sol.stats.primal_obj, 1.0, 1e-6);
}

TEST(ConicSolverTest, RandomSdpSatisfiesKktConditions) {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 4; ++trial) {
    const int k = 3;
    const int nvars = 4;
    // C0 = sum x0_j C_j + I guarantees strict feasibility at x0.
    std::vector<Matrix> cj;
    Vector x0(nvars);
    for (int j = 0; j < nvars; ++j) {
      cj.push_back(symmetrize(drlqr_test::random_matrix(k, k, rng)));
      x0[j] = rng.next_gaussian();
    }
    Matrix c0 = Matrix::Identity(k, k);
    for (int j = 0; j < nvars; ++j) c0 += x0[j] * cj[j];

    ConicProblem prob;
    prob.c = Vector(nvars);
    for (int j = 0; j < nvars; ++j) prob.c[j] = rng.next_gaussian();
    // Bound the feasible set so the problem stays bounded: tr of the slack
    // below, i.e. a second PSD block 2 tr(C0) I - slack >= 0 is overkill;
    // instead add box rows +-x_j <= 10.
    prob.cones.push_back({ConeKind::nonneg, 2 * nvars});
    prob.cones.push_back({ConeKind::psd, k});
    for (int j = 0; j < nvars; ++j) {
      prob.triplets.emplace_back(2 * j, j, 1.0);
      prob.triplets.emplace_back(2 * j + 1, j, -1.0);
    }
    const int psd0 = 2 * nvars;
    for (int j = 0; j < nvars; ++j) {
      const Vector col = svec(cj[j]);
      for (int r = 0; r < col.size(); ++r) {
        if (col[r] != 0.0) prob.triplets.emplace_back(psd0 + r, j, col[r]);
      }
    }
    prob.b = Vector(psd0 + svec_dim(k));
    prob.b.head(psd0).setConstant(10.0);
    prob.b.tail(svec_dim(k)) = svec(c0);

    ConicSolution sol = solve_conic(prob);
    ASSERT_EQ(sol.status, SolveStatus::optimal) << "trial " << trial;

    // Primal feasibility: orthant slacks nonnegative, PSD slack PSD.
    EXPECT_GE(sol.slacks.head(psd0).minCoeff(), -1e-7);
    const Matrix slack = smat(sol.slacks.tail(svec_dim(k)), k);
    EXPECT_GE(min_eigenvalue(slack), -1e-7);

    // Dual feasibility and stationarity: z >= 0 on the orthant, Z >= 0 on
    // the PSD block, c + A'z = 0.
    EXPECT_GE(sol.duals.head(psd0).minCoeff(), -1e-7);
    EXPECT_GE(min_eigenvalue(smat(sol.duals.tail(svec_dim(k)), k)), -1e-7);
    Vector grad = prob.c;
    for (const auto& t : prob.triplets) {
      grad[t.col()] += t.value() * sol.duals[t.row()];
    }
    EXPECT_LE(grad.norm(), 1e-6 * (1.0 + prob.c.norm())) << "trial " << trial;

    // Complementarity through the reported gap.
    EXPECT_LE(sol.stats.rel_gap, 1e-6);

    // The reported objective is the objective of the reported point.
    EXPECT_NEAR(sol.stats.primal_obj, prob.c.dot(sol.x),
                1e-9 * (1.0 + std::abs(sol.stats.primal_obj)));
  }
}

TEST(ConicSolverTest, DetectsPrimalInfeasibility) {
  // x >= 1 and -x >= 0 cannot hold together.
  ConicProblem prob;
  prob.c = Vector::Constant(1, 1.0);
  prob.cones.push_back({ConeKind::nonneg, 2});
  prob.triplets.emplace_back(0, 0, -1.0);
  prob.triplets.emplace_back(1, 0, 1.0);
  prob.b = Vector(2);
  prob.b << -1.0, 0.0;
  ConicSolution sol = solve_conic(prob);
  EXPECT_EQ(sol.status, SolveStatus::primal_infeasible);
}

TEST(ConicSolverTest, DetectsUnboundedness) {
  // min -x s.t. x >= 0 diverges along the positive ray.
  ConicProblem prob;
  prob.c = Vector::Constant(1, -1.0);
  prob.cones.push_back({ConeKind::nonneg, 1});
  prob.triplets.emplace_back(0, 0, -1.0);
  prob.b = Vector::Zero(1);
  ConicSolution sol = solve_conic(prob);
  EXPECT_EQ(sol.status, SolveStatus::dual_infeasible);
}

TEST(ConicSolverTest, RunsAreDeterministic) {
  SplitMix64 rng(11);
  const Matrix m = drlqr_test::random_psd(4, rng, 2.0);
  ConicProblem prob;
  prob.c = Vector::Constant(1, 1.0);
  prob.cones.push_back({ConeKind::psd, 4});
  const Vector id = svec_identity(4);
  for (int r = 0; r < id.size(); ++r) {
    if (id[r] != 0.0) prob.triplets.emplace_back(r, 0, -id[r]);
  }
  prob.b = -svec(m);
  ConicSolution first = solve_conic(prob);
  ConicSolution second = solve_conic(prob);
  ASSERT_EQ(first.status, SolveStatus::optimal);
  ASSERT_EQ(second.status, SolveStatus::optimal);
  EXPECT_EQ(first.stats.iterations, second.stats.iterations);
  EXPECT_EQ(first.x[0], second.x[0]);  // bitwise
}

}  // namespace
}  // namespace drlqr
