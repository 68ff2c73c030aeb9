#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace minorant {

/// A Harnack-distance value together with how it was obtained. `exact` is
/// true only for closed forms; triangle products are upper bounds and the
/// Poisson oracle is a numeric estimate.
struct HarnackBound {
  enum class Method { ball_formula, triangle, punctured_circle, poisson_oracle };

  double value = 1.0;
  bool exact = false;
  Method method = Method::ball_formula;
};

/// Harnack distance between the center of a ball of radius `radius` and a
/// point at distance `rho` from it:
///
///   (radius + rho) * radius^{d-2} / (radius - rho)^{d-1},
///
/// strictly increasing in rho, equal to 1 at rho = 0.
inline HarnackBound ball_center_distance(Dimension d, double radius, double rho) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("ball_center_distance: radius must be positive and finite");
  }
  if (!(rho >= 0.0) || !(rho < radius)) {
    throw DomainError("x outside ball: need 0 <= rho < radius, got rho = " + std::to_string(rho) +
                      ", radius = " + std::to_string(radius));
  }
  const double value = (radius + rho) * std::pow(radius, d.value() - 2) /
                       std::pow(radius - rho, d.value() - 1);
  return {value, true, HarnackBound::Method::ball_formula};
}

/// Upper bound for the Harnack distance between two interior points of the
/// ball centered at the origin, via the multiplicative triangle inequality
/// with the center as intermediate point.
inline HarnackBound ball_pair_upper(Dimension d, double radius, const Point& x, const Point& y) {
  if (static_cast<int>(x.size()) != d.value() || static_cast<int>(y.size()) != d.value()) {
    throw DomainError("ball_pair_upper: point dimension does not match d");
  }
  const double nx = euclid_norm(x);
  const double ny = euclid_norm(y);
  if (!(nx < radius)) throw DomainError("x outside ball: |x| = " + std::to_string(nx) + " >= radius");
  if (!(ny < radius)) throw DomainError("y outside ball: |y| = " + std::to_string(ny) + " >= radius");
  const double value =
      ball_center_distance(d, radius, nx).value * ball_center_distance(d, radius, ny).value;
  return {value, false, HarnackBound::Method::triangle};
}

/// Upper bound ((1+R)/(1-R))^2 for the Harnack distance of the punctured unit
/// disc between any two points of equal modulus R.
inline HarnackBound punctured_disc_circle_bound(double R) {
  if (!(R > 0.0) || !(R < 1.0)) {
    throw DomainError("punctured_disc_circle_bound: R must lie in (0, 1), got " + std::to_string(R));
  }
  const double q = (1.0 + R) / (1.0 - R);
  return {q * q, false, HarnackBound::Method::punctured_circle};
}

/// Poisson kernel of the unit disc at the boundary point e^{i*angle},
/// normalized to total boundary mass one:
///
///   P(x, zeta) = (1 - |x|^2) / (2 pi |zeta - x|^2).
///
/// Ratios of kernels, hence every Harnack quantity computed from them, are
/// independent of the normalization.
inline double poisson_disc_kernel(std::complex<double> x, double angle) {
  const std::complex<double> zeta = std::polar(1.0, angle);
  const double dist2 = std::norm(zeta - x);
  if (dist2 == 0.0) throw DomainError("poisson_disc_kernel: evaluation point coincides with the boundary point");
  return (1.0 - std::norm(x)) / (2.0 * std::numbers::pi * dist2);
}

namespace detail {

struct CircleMaxResult {
  double angle = 0.0;
  double value = 0.0;
};

/// Maximizes a smooth 2pi-periodic function: coarse scan over
/// `coarse_samples` equispaced angles followed by golden-section refinement
/// of the bracketing interval, down to a bracket width of `angle_tolerance`.
/// Throws NumericError carrying the live bracket when the iteration cap is
/// reached first.
template <class F>
CircleMaxResult maximize_over_circle(const F& f, int coarse_samples, double angle_tolerance,
                                     int max_iterations = 200) {
  const double two_pi = 2.0 * std::numbers::pi;
  double best_angle = 0.0;
  double best_value = f(0.0);
  for (int j = 1; j < coarse_samples; ++j) {
    const double th = two_pi * j / coarse_samples;
    const double v = f(th);
    if (v > best_value) {
      best_value = v;
      best_angle = th;
    }
  }

  const double step = two_pi / coarse_samples;
  double lo = best_angle - step;
  double hi = best_angle + step;
  static const double kInvGolden = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - kInvGolden * (hi - lo);
  double x2 = lo + kInvGolden * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  int iterations = 0;
  while (hi - lo > angle_tolerance) {
    if (++iterations > max_iterations) {
      throw NumericError("boundary angle search did not converge: bracket width " +
                             std::to_string(hi - lo) + " above tolerance " +
                             std::to_string(angle_tolerance),
                         lo, hi);
    }
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvGolden * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvGolden * (hi - lo);
      f1 = f(x1);
    }
    best_value = std::max(best_value, std::max(f1, f2));
  }
  const double mid = 0.5 * (lo + hi);
  best_value = std::max(best_value, f(mid));
  return {mid, best_value};
}

inline void require_inside_unit_disc(std::complex<double> z, const char* name) {
  if (!(std::abs(z) < 1.0)) {
    throw DomainError(std::string(name) + " outside the unit disc: |" + name +
                      "| = " + std::to_string(std::abs(z)));
  }
}

}  // namespace detail

/// Harnack distance of the unit disc computed from boundary kernels:
///
///   max( sup_zeta P(x, zeta)/P(y, zeta), sup_zeta P(y, zeta)/P(x, zeta) ).
///
/// For the disc this equals the distance itself, since every positive
/// harmonic function is the Poisson integral of a positive boundary measure.
/// The sup is located by a 720-point angular scan plus golden-section
/// refinement; `tolerance` is the final bracket width in the angle.
inline HarnackBound poisson_disc_distance(std::complex<double> x, std::complex<double> y,
                                          double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("poisson_disc_distance: tolerance must be > 0");
  detail::require_inside_unit_disc(x, "x");
  detail::require_inside_unit_disc(y, "y");

  const auto ratio_sup = [&](std::complex<double> num, std::complex<double> den) {
    const double a_num = 1.0 + std::norm(num);
    const double a_den = 1.0 + std::norm(den);
    const double scale = (1.0 - std::norm(num)) / (1.0 - std::norm(den));
    const auto f = [&](double th) {
      const double c = std::cos(th);
      const double s = std::sin(th);
      const double d_num = a_num - 2.0 * (num.real() * c + num.imag() * s);
      const double d_den = a_den - 2.0 * (den.real() * c + den.imag() * s);
      return scale * d_den / d_num;
    };
    return detail::maximize_over_circle(f, 720, tolerance).value;
  };

  const double value = std::max(ratio_sup(x, y), ratio_sup(y, x));
  return {std::max(value, 1.0), false, HarnackBound::Method::poisson_oracle};
}

/// Poisson-kernel sup estimate of the Harnack distance between the center of
/// the unit ball in R^d (d >= 2) and a point at distance rho from it. The
/// kernel ratio only depends on the polar angle of the boundary point, so the
/// sup reduces to the same one-dimensional search as on the disc.
inline HarnackBound ball_center_poisson_oracle(Dimension d, double rho, double tolerance) {
  if (d.value() < 2) throw DomainError("ball_center_poisson_oracle: requires d >= 2");
  if (!(tolerance > 0.0)) throw DomainError("ball_center_poisson_oracle: tolerance must be > 0");
  if (!(rho >= 0.0) || !(rho < 1.0)) {
    throw DomainError("ball_center_poisson_oracle: need 0 <= rho < 1");
  }
  const double half_d = d.value() / 2.0;
  const double one_minus = 1.0 - rho * rho;
  const auto dist_pow = [&](double th) {
    return std::pow(1.0 + rho * rho - 2.0 * rho * std::cos(th), half_d);
  };
  const auto toward = [&](double th) { return one_minus / dist_pow(th); };
  const auto away = [&](double th) { return dist_pow(th) / one_minus; };
  const double value = std::max(detail::maximize_over_circle(toward, 720, tolerance).value,
                                detail::maximize_over_circle(away, 720, tolerance).value);
  return {std::max(value, 1.0), false, HarnackBound::Method::poisson_oracle};
}

struct BoundaryAtom {
  double angle = 0.0;
  double mass = 0.0;
};

/// Finite positive atomic measure on the unit circle, used to sample the cone
/// of positive harmonic functions through Poisson integrals.
class BoundaryAtomMeasure {
 public:
  explicit BoundaryAtomMeasure(std::vector<BoundaryAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw ValidationError("BoundaryAtomMeasure: needs at least one atom");
    for (const auto& a : atoms_) {
      if (!std::isfinite(a.angle)) throw ValidationError("BoundaryAtomMeasure: atom angle must be finite");
      if (!std::isfinite(a.mass) || !(a.mass > 0.0)) {
        throw ValidationError("BoundaryAtomMeasure: atom masses must be positive");
      }
    }
  }

  const std::vector<BoundaryAtom>& atoms() const noexcept { return atoms_; }

  /// The positive harmonic function on the disc with this boundary measure.
  double poisson_integral(std::complex<double> x) const {
    detail::require_inside_unit_disc(x, "x");
    double sum = 0.0;
    for (const auto& a : atoms_) sum += a.mass * poisson_disc_kernel(x, a.angle);
    return sum;
  }

 private:
  std::vector<BoundaryAtom> atoms_;
};

/// Positive harmonic function on the punctured closed unit disc of the form
///
///   w  ->  b * ln(1/|w|) + (Poisson integral of a boundary atom measure),
///
/// the general shape of a positive harmonic function on the punctured disc.
/// Evaluation at w = 0 yields +inf when b > 0; points of the closed disc are
/// accepted (the logarithmic part vanishes on the boundary).
class PuncturedHarmonicSample {
 public:
  PuncturedHarmonicSample(double log_coefficient, BoundaryAtomMeasure boundary_measure)
      : log_coefficient_(log_coefficient), boundary_measure_(std::move(boundary_measure)) {
    if (!std::isfinite(log_coefficient_) || log_coefficient_ < 0.0) {
      throw ValidationError("punctured_harmonic_sample: b must be finite and >= 0");
    }
  }

  ExtendedReal operator()(std::complex<double> w) const {
    const double r = std::abs(w);
    if (r > 1.0) throw DomainError("punctured harmonic sample: |w| must be <= 1");
    if (r == 0.0) {
      if (log_coefficient_ > 0.0) return ExtendedReal::plus_infinity();
      return ExtendedReal(boundary_measure_.poisson_integral(w));
    }
    double poisson_part = 0.0;
    for (const auto& a : boundary_measure_.atoms()) {
      const std::complex<double> zeta = std::polar(1.0, a.angle);
      const double dist2 = std::norm(zeta - w);
      if (dist2 == 0.0) {
        throw DomainError("punctured harmonic sample: evaluation at a boundary atom");
      }
      poisson_part += a.mass * (1.0 - r * r) / (2.0 * std::numbers::pi * dist2);
    }
    return ExtendedReal(log_coefficient_ * std::log(1.0 / r) + poisson_part);
  }

  double log_coefficient() const noexcept { return log_coefficient_; }
  const BoundaryAtomMeasure& boundary_measure() const noexcept { return boundary_measure_; }

 private:
  double log_coefficient_;
  BoundaryAtomMeasure boundary_measure_;
};

inline PuncturedHarmonicSample punctured_harmonic_sample(double b, BoundaryAtomMeasure mu) {
  return PuncturedHarmonicSample(b, std::move(mu));
}

}  // namespace minorant
