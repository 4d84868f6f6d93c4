#pragma once

#include <stdexcept>
#include <string>

namespace stokeslab {

/// Caller violated a documented precondition (bad index, rank mismatch, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input lies outside the mathematical domain (pole, coincident parameters).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or quadrature did not reach its tolerance within the allowed budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_magnitude)
      : std::runtime_error(what), last_magnitude_(last_magnitude) {}

  /// log10 of the magnitude of the last term (or tail estimate) seen.
  double last_magnitude() const noexcept { return last_magnitude_; }

 private:
  double last_magnitude_;
};

/// An internal invariant failed; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace stokeslab
