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

#ifndef DRLQR_ERRORS_HPP_
#define DRLQR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace drlqr {

// Base class for all toolkit errors. `code()` is a stable machine-readable
// identifier; the CLI maps it into the error JSON emitted on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Shape or index inconsistency between inputs (non-square A, mismatched
// B/Xi/Q/R dimensions, history length, out-of-range time index).
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error("dimension_mismatch", what) {}
};

// A numeric precondition failed: matrix not symmetric, not PSD/PD within
// tolerance, parameter out of range (delta < 0, T < 1, resolution < 2, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error("validation_error", what) {}
};

// A matrix required to be invertible (M_t, Sigma_hat) is singular to
// working precision.
class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& what)
      : Error("singular_matrix", what) {}
};

// The scalar dual was evaluated at a gamma outside its domain.
class OutOfDomainError : public Error {
 public:
  explicit OutOfDomainError(const std::string& what)
      : Error("out_of_domain", what) {}
};

// Worst-case regret requested for a policy whose regret is identically zero
// on the ball (all Hbar_t = 0 and a zero quadratic): every admissible stage
// law is worst-case and no canonical representative exists.
class DegenerateZeroRegretError : public Error {
 public:
  explicit DegenerateZeroRegretError(const std::string& what)
      : Error("degenerate_zero_regret", what) {}
};

// The boundary case was selected but the kernel of beta*I - Bcal is
// numerically empty; diagnostics are carried in the message.
class KernelEmptyError : public Error {
 public:
  explicit KernelEmptyError(const std::string& what)
      : Error("kernel_empty", what) {}
};

// An iteration (bisection, interior point) exceeded its budget without
// meeting its tolerance.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what)
      : Error("no_convergence", what) {}
};

// The DRO center formula hit a nearly singular gamma*I - N_0 with a
// right-hand side that leaves its range; the message reports conditioning.
class PseudoinverseError : public Error {
 public:
  explicit PseudoinverseError(const std::string& what)
      : Error("ill_conditioned_pseudoinverse", what) {}
};

// Structurally malformed conic problem (cone lengths, duplicate triplets,
// indices out of range).
class BadProblemError : public Error {
 public:
  explicit BadProblemError(const std::string& what)
      : Error("bad_problem", what) {}
};

// The conic solver could not certify optimality or infeasibility.
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what)
      : Error("solver_failure", what) {}
};

// Grid enumeration requested for an unsupported disturbance dimension.
class UnsupportedDimensionError : public Error {
 public:
  explicit UnsupportedDimensionError(const std::string& what)
      : Error("unsupported_dimension", what) {}
};

// Configuration / file / parse problems surfaced by the CLI layer.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io_error", what) {}
};

}  // namespace drlqr

#endif  // DRLQR_ERRORS_HPP_
