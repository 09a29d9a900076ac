#pragma once

#include <stdexcept>
#include <string>

namespace fracinv {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument sits on a pole of the gamma function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical result could not be certified to the requested accuracy.
/// Raised instead of returning a value whose error estimate is too large.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method did not converge within its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracinv
