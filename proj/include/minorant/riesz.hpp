#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace minorant {

struct Atom {
  Point location;
  double mass = 0.0;
};

/// Finite positive atomic measure: the surrogate used for Riesz measures of
/// logarithmic potentials, whose restrictions are exactly atom lists with
/// masses equal to multiplicities.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;

  explicit AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    for (const auto& a : atoms_) {
      if (a.location.empty()) throw ValidationError("AtomicMeasure: atom location must be nonempty");
      if (a.location.size() != atoms_.front().location.size()) {
        throw ValidationError("AtomicMeasure: atoms must share one dimension");
      }
      for (double c : a.location) {
        if (!std::isfinite(c)) throw ValidationError("AtomicMeasure: atom coordinates must be finite");
      }
      if (!std::isfinite(a.mass) || !(a.mass > 0.0)) {
        throw ValidationError("AtomicMeasure: atom masses must be positive");
      }
    }
  }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty(); }

  double total_mass() const noexcept {
    double sum = 0.0;
    for (const auto& a : atoms_) sum += a.mass;
    return sum;
  }

  /// Restriction to a closed ball (atoms on the sphere included).
  AtomicMeasure restricted_to(const Ball& closed_ball) const {
    std::vector<Atom> kept;
    for (const auto& a : atoms_) {
      if (closed_ball.contains_closed(a.location)) kept.push_back(a);
    }
    return AtomicMeasure(std::move(kept));
  }

  friend AtomicMeasure operator+(const AtomicMeasure& a, const AtomicMeasure& b) {
    std::vector<Atom> merged = a.atoms_;
    merged.insert(merged.end(), b.atoms_.begin(), b.atoms_.end());
    return AtomicMeasure(std::move(merged));
  }

 private:
  std::vector<Atom> atoms_;
};

/// Radial counting function: the measure of the closed ball of radius t
/// about x. Right-continuous and nondecreasing in t.
inline double radial_counting(const AtomicMeasure& mu, const Point& x, double t) {
  if (!(t >= 0.0)) throw DomainError("radial_counting: t must be >= 0");
  double sum = 0.0;
  for (const auto& a : mu.atoms()) {
    if (euclid_dist(a.location, x) <= t) sum += a.mass;
  }
  return sum;
}

/// Integrated counting function with center x,
///
///   N(r) = max{1, d-2} * int_0^r radial_counting(t) / t^{d-1} dt,
///
/// evaluated in closed form as the sum of m_k * (k(r) - k(rho_k)) over atoms
/// with 0 < rho_k <= r, where k is the radial kernel of dimension d. An atom
/// sitting exactly at x makes the integral diverge, so the value is +inf for
/// every r > 0; N(0) = 0. Nondecreasing and continuous in r wherever finite.
inline ExtendedReal integrated_counting(const AtomicMeasure& mu, const Point& x, double r,
                                        Dimension d) {
  if (d.value() < 2) {
    throw DomainError("integrated_counting: requires d >= 2, got d = " + std::to_string(d.value()));
  }
  if (!(r >= 0.0)) throw DomainError("integrated_counting: r must be >= 0");
  if (r == 0.0) return ExtendedReal(0.0);
  double total = 0.0;
  const double kernel_at_r = detail::kernel_positive(d, r);
  for (const auto& a : mu.atoms()) {
    const double rho = euclid_dist(a.location, x);
    if (rho > r) continue;
    if (rho == 0.0) return ExtendedReal::plus_infinity();
    total += a.mass * (kernel_at_r - detail::kernel_positive(d, rho));
  }
  return ExtendedReal(total);
}

}  // namespace minorant
