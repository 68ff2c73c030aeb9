#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "extended_real.hpp"

namespace minorant {

/// Dimension d >= 1 of the ambient Euclidean space.
class Dimension {
 public:
  explicit Dimension(int d) : value_(d) {
    if (d < 1) throw DomainError("Dimension: d must be >= 1, got " + std::to_string(d));
  }

  int value() const noexcept { return value_; }

  /// The weight max{1, d-2} that multiplies radial counting integrals and,
  /// together with the sphere area, normalizes the fundamental solution.
  int counting_weight() const noexcept { return std::max(1, value_ - 2); }

  friend bool operator==(Dimension a, Dimension b) noexcept { return a.value_ == b.value_; }
  friend bool operator!=(Dimension a, Dimension b) noexcept { return a.value_ != b.value_; }

 private:
  int value_;
};

/// A point of R^d, d = size().
using Point = std::vector<double>;

inline double euclid_norm(const Point& x) {
  double sum = 0.0;
  for (double c : x) sum += c * c;
  return std::sqrt(sum);
}

inline double euclid_dist(const Point& x, const Point& y) {
  if (x.size() != y.size()) {
    throw DomainError("euclid_dist: points of different dimension (" + std::to_string(x.size()) +
                      " vs " + std::to_string(y.size()) + ")");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

/// Euclidean ball. Whether the boundary sphere belongs is decided by the
/// operation, not by the type.
struct Ball {
  Point center;
  double radius = 0.0;

  bool contains_closed(const Point& p) const { return euclid_dist(center, p) <= radius; }
  bool contains_open(const Point& p) const { return euclid_dist(center, p) < radius; }
};

namespace detail {

/// Gamma function via the Lanczos approximation with g = 7 and 9 terms
/// (coefficients of Godfrey/Pugh). Relative error stays below 1e-13 for real
/// arguments in [0.5, 30], which covers every use here: the arguments are
/// always d/2 or p/2 + 1.
inline double lanczos_gamma(double z) {
  if (!(z >= 0.5)) throw DomainError("lanczos_gamma: argument must be >= 0.5");
  static constexpr double kCoeff[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
  };
  double series = kCoeff[0];
  for (int i = 1; i < 9; ++i) series += kCoeff[i] / (z - 1.0 + i);
  const double t = z + 6.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z - 0.5) * std::exp(-t) * series;
}

/// Kernel value for strictly positive radius (fast finite path).
inline double kernel_positive(Dimension d, double t) {
  switch (d.value()) {
    case 1:
      return t;
    case 2:
      return std::log(t);
    default:
      return -std::pow(t, -static_cast<double>(d.value() - 2));
  }
}

}  // namespace detail

/// Surface area of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2).
inline double sphere_area(Dimension d) {
  const double half = d.value() / 2.0;
  return 2.0 * std::pow(std::numbers::pi, half) / detail::lanczos_gamma(half);
}

/// Radial kernel of the fundamental solution of the Laplace equation:
/// t for d = 1, ln t for d = 2, -t^{-(d-2)} for d >= 3. At t = 0 the limit
/// is returned: 0 for d = 1 and -inf otherwise.
inline ExtendedReal kernel(Dimension d, double t) {
  if (!(t >= 0.0)) throw DomainError("kernel: t must be >= 0");
  if (t == 0.0) {
    return d.value() == 1 ? ExtendedReal(0.0) : ExtendedReal::minus_infinity();
  }
  return ExtendedReal(detail::kernel_positive(d, t));
}

/// Normalizing constant c_p = pi^{p/2} / Gamma(p/2 + 1) of the power gauge
/// h_p(t) = c_p t^p (so h_1(t) = 2t, h_2(t) = pi t^2).
inline double gauge_constant(double p) {
  if (!(p >= 0.0)) throw DomainError("gauge_constant: p must be >= 0");
  return std::pow(std::numbers::pi, p / 2.0) / detail::lanczos_gamma(p / 2.0 + 1.0);
}

/// Covering gauge h on [0, max_radius()]: nonnegative, nondecreasing, with
/// h(0) = 0. Either a power gauge t -> B * c_p * t^p, or a tabulated gauge
/// interpolated linearly between its samples. Linear interpolation is enough
/// here because gauges are only ever used for monotone upper evaluation of
/// covering costs.
class Gauge {
 public:
  enum class Kind { power, tabulated };

  struct Sample {
    double t = 0.0;
    double value = 0.0;
  };

  static Gauge power(double multiplier, double degree) {
    if (!std::isfinite(multiplier) || !(multiplier >= 0.0)) {
      throw ValidationError("gauge.B must be finite and >= 0");
    }
    if (!std::isfinite(degree) || !(degree > 0.0)) {
      throw ValidationError("gauge.p must be finite and > 0");
    }
    Gauge g;
    g.kind_ = Kind::power;
    g.multiplier_ = multiplier;
    g.degree_ = degree;
    g.unit_constant_ = gauge_constant(degree);
    return g;
  }

  static Gauge tabulated(std::vector<Sample> samples) {
    if (samples.size() < 2) throw ValidationError("gauge.table needs at least two samples");
    if (samples.front().t != 0.0 || samples.front().value != 0.0) {
      throw ValidationError("gauge.table must start with the sample (0, 0)");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!std::isfinite(samples[i].t) || !std::isfinite(samples[i].value)) {
        throw ValidationError("gauge.table entries must be finite");
      }
      if (samples[i].value < 0.0) throw ValidationError("gauge.table values must be >= 0");
      if (i > 0) {
        if (!(samples[i].t > samples[i - 1].t)) {
          throw ValidationError("gauge.table abscissae must be strictly increasing");
        }
        if (samples[i].value < samples[i - 1].value) {
          throw ValidationError("gauge.table values must be nondecreasing");
        }
      }
    }
    Gauge g;
    g.kind_ = Kind::tabulated;
    g.samples_ = std::move(samples);
    return g;
  }

  Kind kind() const noexcept { return kind_; }

  /// Power-gauge multiplier B (throws for tabulated gauges).
  double multiplier() const {
    require_power("multiplier");
    return multiplier_;
  }

  /// Power-gauge degree p (throws for tabulated gauges).
  double degree() const {
    require_power("degree");
    return degree_;
  }

  const std::vector<Sample>& samples() const {
    if (kind_ != Kind::tabulated) throw UnsupportedGaugeError("gauge: samples() requires a tabulated gauge");
    return samples_;
  }

  /// Largest radius the gauge is defined for (+inf for power gauges).
  double max_radius() const noexcept {
    return kind_ == Kind::power ? std::numeric_limits<double>::infinity() : samples_.back().t;
  }

  double operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("gauge: argument must be >= 0");
    if (kind_ == Kind::power) {
      if (t == 0.0) return 0.0;
      return multiplier_ * unit_constant_ * std::pow(t, degree_);
    }
    if (t > samples_.back().t) {
      throw DomainError("gauge: argument exceeds the table radius");
    }
    auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                               [](const Sample& s, double v) { return s.t < v; });
    if (it->t == t) return it->value;
    const Sample& hi = *it;
    const Sample& lo = *(it - 1);
    const double w = (t - lo.t) / (hi.t - lo.t);
    return lo.value + w * (hi.value - lo.value);
  }

 private:
  Gauge() = default;

  void require_power(const char* what) const {
    if (kind_ != Kind::power) {
      throw UnsupportedGaugeError(std::string("gauge: ") + what + " requires a power gauge");
    }
  }

  Kind kind_ = Kind::power;
  double multiplier_ = 0.0;
  double degree_ = 1.0;
  double unit_constant_ = 1.0;
  std::vector<Sample> samples_;
};

}  // namespace minorant
