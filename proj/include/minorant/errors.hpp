#pragma once

#include <stdexcept>
#include <string>

namespace minorant {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A composite input (problem description, gauge, configuration) violates one
/// of its declared invariants. The message names the offending field or the
/// failed inequality.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An integral that must be finite diverges for the given parameters.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Operation is defined only for another gauge kind.
class UnsupportedGaugeError : public Error {
 public:
  using Error::Error;
};

/// An iterative numeric procedure did not converge within its iteration cap.
/// Carries the best bracket reached so callers can inspect or restart.
class NumericError : public Error {
 public:
  NumericError(const std::string& what_arg, double bracket_low, double bracket_high)
      : Error(what_arg), bracket_low_(bracket_low), bracket_high_(bracket_high) {}

  double bracket_low() const noexcept { return bracket_low_; }
  double bracket_high() const noexcept { return bracket_high_; }

 private:
  double bracket_low_;
  double bracket_high_;
};

}  // namespace minorant
