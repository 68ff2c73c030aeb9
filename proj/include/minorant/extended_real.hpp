#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace minorant {

/// The real line completed with -inf and +inf as explicit states rather than
/// IEEE specials, so an infinite value can only appear where an operation
/// deliberately produces one.
///
/// Arithmetic follows the order-completion conventions: an infinity dominates
/// any sum of finite terms, sums of like infinities keep the sign, and the
/// indeterminate form (+inf) + (-inf) throws. Scalar multiplication uses the
/// measure-theoretic convention 0 * (+-inf) = 0.
class ExtendedReal {
 public:
  ExtendedReal() : ExtendedReal(0.0) {}

  ExtendedReal(double value) : state_(State::finite), value_(value) {
    if (!std::isfinite(value)) {
      throw DomainError(
          "ExtendedReal: the finite constructor requires a finite double; "
          "use plus_infinity()/minus_infinity() for the infinite states");
    }
  }

  static ExtendedReal plus_infinity() noexcept { return ExtendedReal(State::plus_inf); }
  static ExtendedReal minus_infinity() noexcept { return ExtendedReal(State::minus_inf); }

  bool is_finite() const noexcept { return state_ == State::finite; }
  bool is_plus_infinity() const noexcept { return state_ == State::plus_inf; }
  bool is_minus_infinity() const noexcept { return state_ == State::minus_inf; }

  /// The finite value; throws for the infinite states.
  double finite_value() const {
    if (!is_finite()) throw DomainError("ExtendedReal: value is not finite");
    return value_;
  }

  /// Finite value, or +-HUGE_VAL for the infinite states (for printing and
  /// interop with plain doubles).
  double as_double() const noexcept {
    switch (state_) {
      case State::plus_inf:
        return HUGE_VAL;
      case State::minus_inf:
        return -HUGE_VAL;
      default:
        return value_;
    }
  }

  ExtendedReal operator-() const noexcept {
    switch (state_) {
      case State::plus_inf:
        return minus_infinity();
      case State::minus_inf:
        return plus_infinity();
      default: {
        ExtendedReal out;
        out.value_ = -value_;
        return out;
      }
    }
  }

  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_finite() && b.is_finite()) return ExtendedReal(a.value_ + b.value_);
    if (a.is_plus_infinity() && b.is_minus_infinity()) {
      throw Error("ExtendedReal: indeterminate sum (+inf) + (-inf)");
    }
    if (a.is_minus_infinity() && b.is_plus_infinity()) {
      throw Error("ExtendedReal: indeterminate sum (-inf) + (+inf)");
    }
    if (a.is_finite()) return b;
    return a;
  }

  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) { return a + (-b); }

  /// c * x with the convention 0 * (+-inf) = 0.
  ExtendedReal scaled(double c) const {
    if (!std::isfinite(c)) throw DomainError("ExtendedReal::scaled: scalar must be finite");
    if (is_finite()) return ExtendedReal(c * value_);
    if (c == 0.0) return ExtendedReal(0.0);
    return (c > 0.0) == is_plus_infinity() ? plus_infinity() : minus_infinity();
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    if (a.state_ != b.state_) return false;
    return a.state_ != State::finite || a.value_ == b.value_;
  }
  friend bool operator!=(const ExtendedReal& a, const ExtendedReal& b) noexcept { return !(a == b); }

  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    if (a.state_ == b.state_ && a.state_ != State::finite) return false;
    return a.rank() < b.rank() || (a.is_finite() && b.is_finite() && a.value_ < b.value_);
  }
  friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) noexcept { return b < a; }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) noexcept { return !(b < a); }
  friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) noexcept { return !(a < b); }

  std::string str() const {
    switch (state_) {
      case State::plus_inf:
        return "+inf";
      case State::minus_inf:
        return "-inf";
      default:
        return std::to_string(value_);
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) { return os << x.str(); }

 private:
  enum class State { minus_inf, finite, plus_inf };

  explicit ExtendedReal(State s) noexcept : state_(s), value_(0.0) {}

  int rank() const noexcept {
    switch (state_) {
      case State::minus_inf:
        return -1;
      case State::plus_inf:
        return 1;
      default:
        return 0;
    }
  }

  State state_;
  double value_;
};

}  // namespace minorant
