#pragma once

#include <stdexcept>
#include <string>

namespace arithdyn {

// Base of every library error. The CLI maps the concrete type to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated: zero denominator, non-prime modulus, exceptional point...
class DomainError : public Error {
 public:
  using Error::Error;
};

// P and Q share a factor (zero resultant) or the degree is too small.
class InvalidMapError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An iterative method did not reach its tolerance. Carries the best value seen.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double best_value, double best_error)
      : Error(what), best_value_(best_value), best_error_(best_error) {}

  double best_value() const noexcept { return best_value_; }
  double best_error() const noexcept { return best_error_; }

 private:
  double best_value_;
  double best_error_;
};

// Escape-time evaluation could not separate "bounded" from "escaping" at the depth cap.
class UndecidedError : public NumericError {
 public:
  UndecidedError(const std::string& what, double lower, double upper)
      : NumericError(what, 0.5 * (lower + upper), 0.5 * (upper - lower)),
        lower_(lower),
        upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

// A digit/enumeration/capacity budget was exhausted.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, double largest_height = 0.0)
      : Error(what), largest_height_(largest_height) {}

  // Largest naive height reached before the budget tripped (0 when not applicable).
  double largest_height() const noexcept { return largest_height_; }

 private:
  double largest_height_;
};

}  // namespace arithdyn
