#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace weyl {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: malformed domain files, violated preconditions, bad parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not deliver a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Raised by inertia counting when the shift sits on (or numerically next to)
/// an eigenvalue, so the strict count is not decidable from the pivots.
class ShiftTooCloseError : public NumericalError {
 public:
  ShiftTooCloseError(double shift, double pivot, double scale);

  double shift() const noexcept { return shift_; }
  double pivot() const noexcept { return pivot_; }

 private:
  double shift_;
  double pivot_;
};

class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> residuals);

  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// An exact structural invariant (inequality chain, superadditivity, heat bound
/// on an analytic spectrum) failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace weyl
