#pragma once

#include <stdexcept>
#include <string>

namespace eot {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent caller input (bad dimensions, non-Hermitian
// matrices, weights that do not form a probability vector, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A matrix function was asked to evaluate log on an operator with an
// eigenvalue at or below the floor.  `index` is the offending eigenvalue's
// position in ascending order.
class SingularOperator : public Error {
 public:
  SingularOperator(const std::string& what, int index)
      : Error(what), index(index) {}
  int index;
};

// An exponent exceeded the representable range (e^x with x > overflow_cap).
class NumericalOverflow : public Error {
 public:
  using Error::Error;
};

// A direct numerical routine (e.g. the eigensolver) failed to converge.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// A coordinate-maximisation inner solve ran out of iterations.
// `residual` is the marginal residual when the budget ran out.
class InnerSolverFailure : public Error {
 public:
  InnerSolverFailure(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// Requested symmetry subspace has dimension zero (fermions with fewer
// modes than particles).
class EmptySubspace : public Error {
 public:
  using Error::Error;
};

// A brute-force verifier could not do its job: the ascent diverged (value
// kept decreasing at the backtracking floor) or the probed functional
// returned a non-finite value.
class OracleFailure : public Error {
 public:
  using Error::Error;
};

// Where a one-body density sits relative to the fermionic admissibility
// window 0 < gamma < 1/N.
enum class PauliClass { violates, boundary, strict };

struct PauliStatus {
  double max_eig = 0.0;
  double min_eig = 0.0;
  PauliClass classification = PauliClass::boundary;
};

// A fermionic marginal is not strictly inside the admissibility window
// (violates or sits on the boundary), so no dual maximiser exists.
class PauliViolation : public Error {
 public:
  PauliViolation(const std::string& what, PauliStatus status)
      : Error(what), status(status) {}
  PauliStatus status;
};

}  // namespace eot
