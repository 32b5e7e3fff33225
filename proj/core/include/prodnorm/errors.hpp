#pragma once

#include <stdexcept>
#include <string>

namespace prodnorm {

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a point where the quantity is infinite (e.g. the n = 1
/// density at the origin).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Result would overflow or underflow the double range; the exponentially
/// scaled variant of the routine should be used instead.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// An iterative method (series, quadrature, root bracketing, eigen
/// iteration) stopped at its cap before meeting its tolerance. Carries the
/// best available estimate and its error estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_estimate)
      : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

/// Series summation lost more accuracy than the routine's budget allows.
class PrecisionLossError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

}  // namespace prodnorm
