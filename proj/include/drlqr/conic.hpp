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

#ifndef DRLQR_CONIC_HPP_
#define DRLQR_CONIC_HPP_

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "drlqr/errors.hpp"
#include "drlqr/linalg.hpp"

namespace drlqr {

// Cone program in the slack form
//
//   min c'x   s.t.   A x + s = b,   s in K,
//
// where K is a product of zero cones (equalities), nonnegative orthants, and
// PSD cones listed in row order. PSD cones occupy k(k+1)/2 rows holding the
// scaled lower triangle (svec) of the slack matrix, so "S >= C0 - sum x_j
// C_j" enters as rows svec(C_j) with right-hand side svec(C0).

enum class ConeKind { zero, nonneg, psd };

struct Cone {
  ConeKind kind = ConeKind::nonneg;
  int size = 0;  // zero/nonneg: number of rows; psd: matrix side length

  int rows() const {
    return kind == ConeKind::psd ? size * (size + 1) / 2 : size;
  }
  // Barrier degree: orthant dimension, or matrix side for PSD blocks.
  int degree() const { return kind == ConeKind::zero ? 0 : size; }
};

inline constexpr double kSqrt2 = 1.4142135623730951;

inline int svec_dim(int k) { return k * (k + 1) / 2; }

/**
 * Packs the lower triangle of a symmetric matrix column-major, scaling
 * off-diagonal entries by sqrt(2) so that svec(X)'svec(Y) = tr(XY).
 */
inline Vector svec(const Matrix& m) {
  const int k = static_cast<int>(m.rows());
  Vector v(svec_dim(k));
  int idx = 0;
  for (int j = 0; j < k; ++j) {
    v[idx++] = m(j, j);
    for (int i = j + 1; i < k; ++i) v[idx++] = kSqrt2 * m(i, j);
  }
  return v;
}

inline Matrix smat(const Vector& v, int k) {
  Matrix m(k, k);
  int idx = 0;
  for (int j = 0; j < k; ++j) {
    m(j, j) = v[idx++];
    for (int i = j + 1; i < k; ++i) {
      m(i, j) = v[idx] / kSqrt2;
      m(j, i) = m(i, j);
      ++idx;
    }
  }
  return m;
}

inline Vector svec_identity(int k) {
  return svec(Matrix::Identity(k, k));
}

struct ConicProblem {
  Vector c;
  std::vector<Eigen::Triplet<double>> triplets;  // entries of A
  Vector b;
  std::vector<Cone> cones;
  std::vector<std::string> variable_names;  // optional, for debugging

  int num_vars() const { return static_cast<int>(c.size()); }

  int num_rows() const {
    int total = 0;
    for (const Cone& cone : cones) total += cone.rows();
    return total;
  }

  void validate() const {
    if (num_vars() == 0) throw BadProblemError("conic problem has no variables");
    if (cones.empty()) throw BadProblemError("conic problem has no cones");
    for (const Cone& cone : cones) {
      if (cone.size <= 0) throw BadProblemError("cone with nonpositive size");
    }
    if (b.size() != num_rows()) {
      throw BadProblemError("rhs length " + std::to_string(b.size()) +
                            " != total cone rows " +
                            std::to_string(num_rows()));
    }
    if (!variable_names.empty() &&
        static_cast<int>(variable_names.size()) != num_vars()) {
      throw BadProblemError("variable_names length mismatch");
    }
    std::vector<bool> seen(num_vars(), false);
    for (const auto& t : triplets) {
      if (t.row() < 0 || t.row() >= num_rows() || t.col() < 0 ||
          t.col() >= num_vars()) {
        throw BadProblemError("triplet index out of range");
      }
      if (!std::isfinite(t.value())) {
        throw BadProblemError("non-finite constraint coefficient");
      }
      seen[t.col()] = true;
    }
    for (int j = 0; j < num_vars(); ++j) {
      if (!seen[j]) {
        throw BadProblemError(
            "variable " +
            (variable_names.empty() ? std::to_string(j) : variable_names[j]) +
            " appears in no constraint");
      }
    }
    if (!c.allFinite() || !b.allFinite()) {
      throw BadProblemError("non-finite objective or rhs");
    }
  }

  std::string debug_dump() const {
    std::ostringstream os;
    os << "conic problem: " << num_vars() << " vars, " << num_rows()
       << " rows, " << triplets.size() << " nonzeros\n";
    os << "objective:";
    for (int j = 0; j < num_vars(); ++j) {
      if (c[j] == 0.0) continue;
      os << " " << (c[j] > 0 ? "+" : "") << c[j] << "*"
         << (variable_names.empty() ? "x" + std::to_string(j)
                                    : variable_names[j]);
    }
    os << "\ncones:";
    int row = 0;
    for (const Cone& cone : cones) {
      const char* name = cone.kind == ConeKind::zero      ? "zero"
                         : cone.kind == ConeKind::nonneg  ? "nonneg"
                                                          : "psd";
      os << " " << name << "(" << cone.size << ")@" << row;
      row += cone.rows();
    }
    os << "\n";
    return os.str();
  }
};

/**
 * Incremental builder for cone programs made of named scalar variables and
 * LMI blocks "C0 + sum_j x_j C_j >= 0". Each block becomes a PSD cone with
 * rows svec(C0) and columns -svec(C_j).
 */
class SdpBuilder {
 public:
  int add_var(const std::string& name) {
    names_.push_back(name);
    objective_.push_back(0.0);
    return num_vars_++;
  }

  void add_objective(int var, double coeff) { objective_.at(var) += coeff; }

  void add_lmi(const Matrix& c0,
               const std::vector<std::pair<int, Matrix>>& terms) {
    const int k = static_cast<int>(c0.rows());
    const int row0 = static_cast<int>(rhs_.size());
    const Vector b0 = svec(c0);
    for (int r = 0; r < b0.size(); ++r) rhs_.push_back(b0[r]);
    cones_.push_back({ConeKind::psd, k});
    for (const auto& [var, coeff] : terms) {
      const Vector col = svec(coeff);
      for (int r = 0; r < col.size(); ++r) {
        if (col[r] != 0.0) triplets_.emplace_back(row0 + r, var, -col[r]);
      }
    }
  }

  ConicProblem build() const {
    ConicProblem prob;
    prob.c = Eigen::Map<const Vector>(objective_.data(), num_vars_);
    prob.triplets = triplets_;
    prob.b = Eigen::Map<const Vector>(rhs_.data(), rhs_.size());
    prob.cones = cones_;
    prob.variable_names = names_;
    return prob;
  }

 private:
  int num_vars_ = 0;
  std::vector<std::string> names_;
  std::vector<double> objective_;
  std::vector<Eigen::Triplet<double>> triplets_;
  std::vector<double> rhs_;
  std::vector<Cone> cones_;
};

}  // namespace drlqr

#endif  // DRLQR_CONIC_HPP_
