#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "core.hpp"
#include "hcontent.hpp"
#include "riesz.hpp"

namespace minorant {

namespace detail {

/// splitmix64: tiny deterministic generator with a fully specified mapping to
/// doubles, so seeded families are reproducible bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) noexcept {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

/// Thread count for grid evaluation: `requested` if positive, else the
/// hardware concurrency, in both cases capped by MINORANT_THREADS.
inline int effective_threads(int requested) {
  int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* cap_text = std::getenv("MINORANT_THREADS")) {
    const int cap = std::atoi(cap_text);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return std::min(threads, 256);
}

/// Runs body(i) for i in [0, n) on `threads` threads over contiguous chunks.
/// Results must be written to per-index slots; reductions stay sequential so
/// outcomes are independent of the evaluation order.
template <class Body>
void parallel_for(std::size_t n, int threads, const Body& body) {
  if (n == 0) return;
  threads = std::min<std::size_t>(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

struct Zero {
  std::complex<double> location;
  int multiplicity = 1;
};

/// Subharmonic test function with an analytically known Riesz measure:
///
///   u(z) = sum m_k ln|z - a_k|  -  sum m_k ln|a_k|,
///
/// the log-modulus of a polynomial with zeros a_k of multiplicities m_k,
/// normalized so u(0) = 0 exactly. Its Riesz measure is the atom list
/// {(a_k, m_k)}; no zero may sit at the origin.
class SubharmonicSample {
 public:
  static SubharmonicSample log_polynomial(std::vector<Zero> zeros) {
    double offset = 0.0;
    for (const auto& z : zeros) {
      if (!(std::abs(z.location) > 0.0)) {
        throw ValidationError("log_polynomial: a zero at the origin would leave u(0) undefined");
      }
      if (!std::isfinite(z.location.real()) || !std::isfinite(z.location.imag())) {
        throw ValidationError("log_polynomial: zero locations must be finite");
      }
      if (z.multiplicity < 1) throw ValidationError("log_polynomial: multiplicities must be >= 1");
      offset += z.multiplicity * std::log(std::abs(z.location));
    }
    return SubharmonicSample(std::move(zeros), offset);
  }

  /// u(z) as a plain double; -HUGE_VAL exactly at a zero.
  double evaluate_raw(std::complex<double> z) const noexcept {
    double sum = 0.0;
    for (const auto& zk : zeros_) sum += zk.multiplicity * std::log(std::abs(z - zk.location));
    return sum - offset_;
  }

  ExtendedReal evaluate(std::complex<double> z) const {
    const double v = evaluate_raw(z);
    if (std::isinf(v)) return ExtendedReal::minus_infinity();
    return ExtendedReal(v);
  }

  const std::vector<Zero>& zeros() const noexcept { return zeros_; }

  /// The Riesz measure of u as a planar atomic measure.
  AtomicMeasure riesz() const {
    std::vector<Atom> atoms;
    atoms.reserve(zeros_.size());
    for (const auto& z : zeros_) {
      atoms.push_back(Atom{Point{z.location.real(), z.location.imag()},
                           static_cast<double>(z.multiplicity)});
    }
    return AtomicMeasure(std::move(atoms));
  }

 private:
  SubharmonicSample(std::vector<Zero> zeros, double offset)
      : zeros_(std::move(zeros)), offset_(offset) {}

  std::vector<Zero> zeros_;
  double offset_;
};

inline SubharmonicSample make_log_poly(std::vector<Zero> zeros) {
  return SubharmonicSample::log_polynomial(std::move(zeros));
}

/// Upper-biased estimate of sup of u over the unit circle, guaranteed >= the
/// true supremum: branch-and-bound over angular intervals with the global
/// Lipschitz bound sum m_k / | |a_k| - 1 |, starting from `n_coarse`
/// equispaced intervals and splitting until the gap between the interval
/// bound and the best evaluated value is below `refine_tol`. Zeros within
/// 1e-9 of the circle make the Lipschitz constant blow up; their terms are
/// replaced by the global bound m ln(1 + |a|), which keeps the estimate valid
/// at a documented extra bias.
inline double boundary_sup(const SubharmonicSample& sample, int n_coarse, double refine_tol) {
  if (n_coarse < 64) throw DomainError("boundary_sup: n_coarse must be >= 64");
  if (!(refine_tol > 0.0)) throw DomainError("boundary_sup: refine_tol must be > 0");
  if (sample.zeros().empty()) return 0.0;

  constexpr double kOnCircle = 1e-9;
  std::vector<Zero> far;
  double near_bias = 0.0;
  double offset = 0.0;
  double lipschitz = 0.0;
  for (const auto& z : sample.zeros()) {
    offset += z.multiplicity * std::log(std::abs(z.location));
    const double gap = std::abs(std::abs(z.location) - 1.0);
    if (gap < kOnCircle) {
      near_bias += z.multiplicity * std::log(1.0 + std::abs(z.location));
    } else {
      far.push_back(z);
      lipschitz += z.multiplicity / gap;
    }
  }

  const auto f = [&](double th) {
    const std::complex<double> zeta = std::polar(1.0, th);
    double sum = 0.0;
    for (const auto& zk : far) sum += zk.multiplicity * std::log(std::abs(zeta - zk.location));
    return sum;
  };

  if (far.empty()) return near_bias - offset;

  struct Interval {
    double bound;
    double center;
    double halfwidth;
    double value;
    bool operator<(const Interval& other) const { return bound < other.bound; }
  };

  const double two_pi = 2.0 * std::numbers::pi;
  std::priority_queue<Interval> queue;
  double best_value = -std::numeric_limits<double>::infinity();
  const double hw0 = std::numbers::pi / n_coarse;
  for (int j = 0; j < n_coarse; ++j) {
    const double c = two_pi * (j + 0.5) / n_coarse;
    const double v = f(c);
    best_value = std::max(best_value, v);
    queue.push(Interval{v + lipschitz * hw0, c, hw0, v});
  }

  double global_upper = queue.top().bound;
  long iterations = 0;
  constexpr long kMaxIterations = 2'000'000;
  while (true) {
    const Interval top = queue.top();
    global_upper = top.bound;
    if (global_upper - best_value <= refine_tol || iterations++ > kMaxIterations) break;
    queue.pop();
    const double hw = 0.5 * top.halfwidth;
    for (int side = -1; side <= 1; side += 2) {
      const double c = top.center + side * hw;
      const double v = f(c);
      best_value = std::max(best_value, v);
      queue.push(Interval{v + lipschitz * hw, c, hw, v});
    }
  }
  return global_upper + near_bias - offset;
}

/// Polar sampling grid: `radial` rings (the innermost collapsing to the
/// center) with `angular` points each.
struct PolarGrid {
  int radial = 64;
  int angular = 128;
};

struct VerificationOptions {
  double tolerance = 1e-9;  // relative slack allowed in the pointwise check
  int threads = 0;          // 0 = auto
  std::uint64_t seed = 0;   // drives the grid collision perturbation
};

/// Outcome of checking both estimates on one sample/problem pair.
struct VerificationReport {
  BoundCertificate certificate;
  PolarGrid grid;
  double tolerance = 0.0;

  // Pointwise lower bound over the disc of radius R.
  long pointwise_checked = 0;
  long pointwise_violations = 0;
  double pointwise_worst_slack = std::numeric_limits<double>::infinity();

  // Exceptional-set detection over the sample region.
  long sample_points_checked = 0;
  std::vector<std::complex<double>> exceptional_points;
  std::vector<double> exceptional_values;
  double uniform_bound_worst_slack = std::numeric_limits<double>::infinity();
  CoverEstimate measured_content;
  double content_budget = 0.0;
  double budget_margin = 0.0;
  bool budget_respected = true;
};

namespace detail {

/// Builds a polar grid over the closed disc of radius `outer` (open when
/// `open_disc`), nudging any point within 1e-9 of a zero by 1e-9 in a
/// seed-determined direction.
inline std::vector<std::complex<double>> polar_grid_points(double outer, bool open_disc,
                                                           const PolarGrid& grid,
                                                           const std::vector<Zero>& zeros,
                                                           std::uint64_t seed) {
  if (grid.radial < 2 || grid.angular < 4) {
    throw ValidationError("grid: needs radial >= 2 and angular >= 4");
  }
  std::vector<std::complex<double>> points;
  const double two_pi = 2.0 * std::numbers::pi;
  SplitMix64 rng(seed ^ 0xC0FFEEull);
  const auto push = [&](std::complex<double> z) {
    constexpr double kCollision = 1e-9;
    for (int attempt = 0; attempt < 16; ++attempt) {
      double min_gap = std::numeric_limits<double>::infinity();
      for (const auto& zk : zeros) min_gap = std::min(min_gap, std::abs(z - zk.location));
      if (min_gap >= kCollision) break;
      z += std::polar(kCollision, two_pi * rng.uniform());
    }
    points.push_back(z);
  };

  push(std::complex<double>(0.0, 0.0));
  if (outer == 0.0) return points;
  const int rings = grid.radial - 1;
  for (int i = 1; i <= rings; ++i) {
    const double rho = open_disc ? outer * i / grid.radial : outer * i / rings;
    for (int j = 0; j < grid.angular; ++j) {
      push(std::polar(rho, two_pi * j / grid.angular));
    }
  }
  return points;
}

}  // namespace detail

/// Checks the two estimates for one sample on one problem:
///
///  (a) the pointwise lower bound at every grid point of the open disc of
///      radius R, with the counting term recomputed at each point — zero
///      violations are expected beyond tolerance * (1 + |bound|);
///  (b) flags every grid point of the sample region where u falls below the
///      certificate's uniform lower bound, measures the flagged set's
///      h-content, and compares it to the certified budget.
///
/// The boundary supremum enters only through prob.boundary_sup(), which must
/// dominate the true supremum; any upper bias weakens both checked
/// inequalities, so it can only hide slack, never create false alarms.
inline VerificationReport run_verification(const SubharmonicSample& sample, const DiscProblem& prob,
                                           const PolarGrid& grid,
                                           const VerificationOptions& options = {}) {
  VerificationReport report;
  report.certificate = disc_certificate(prob);
  report.grid = grid;
  report.tolerance = options.tolerance;
  report.content_budget = report.certificate.content_budget;

  const Dimension plane(2);
  const double R = prob.R();
  const double diameter = 2.0 * R;
  const double sup_bound = prob.boundary_sup();
  const AtomicMeasure restricted = sample.riesz().restricted_to(Ball{Point{0.0, 0.0}, R});
  const int threads = detail::effective_threads(options.threads);

  // (a) pointwise bound over the open disc of radius R.
  const auto disc_points =
      detail::polar_grid_points(R, /*open_disc=*/true, grid, sample.zeros(), options.seed);
  std::vector<double> slack(disc_points.size());
  std::vector<char> violated(disc_points.size(), 0);
  detail::parallel_for(disc_points.size(), threads, [&](std::size_t i) {
    const std::complex<double> z = disc_points[i];
    const double dist = ball_center_distance(plane, R, std::abs(z)).value;
    const ExtendedReal counting =
        integrated_counting(restricted, Point{z.real(), z.imag()}, diameter, plane);
    const double bound = -(dist - 1.0) * sup_bound - counting.finite_value();
    const double u = sample.evaluate_raw(z);
    slack[i] = u - bound;
    violated[i] = slack[i] < -options.tolerance * (1.0 + std::abs(bound)) ? 1 : 0;
  });
  report.pointwise_checked = static_cast<long>(disc_points.size());
  for (std::size_t i = 0; i < disc_points.size(); ++i) {
    report.pointwise_violations += violated[i];
    report.pointwise_worst_slack = std::min(report.pointwise_worst_slack, slack[i]);
  }

  // (b) exceptional points of the sample region.
  const auto sample_points =
      detail::polar_grid_points(prob.s0(), /*open_disc=*/false, grid, sample.zeros(), options.seed);
  const double lower_bound = report.certificate.lower_bound.finite_value();
  std::vector<double> values(sample_points.size());
  detail::parallel_for(sample_points.size(), threads, [&](std::size_t i) {
    values[i] = sample.evaluate_raw(sample_points[i]);
  });
  report.sample_points_checked = static_cast<long>(sample_points.size());
  std::vector<FlaggedPoint> flagged;
  flagged.reserve(sample_points.size());
  for (std::size_t i = 0; i < sample_points.size(); ++i) {
    const bool below = values[i] < lower_bound;
    report.uniform_bound_worst_slack = std::min(report.uniform_bound_worst_slack, values[i] - lower_bound);
    if (below) {
      report.exceptional_points.push_back(sample_points[i]);
      report.exceptional_values.push_back(values[i]);
    }
    flagged.push_back(
        FlaggedPoint{Point{sample_points[i].real(), sample_points[i].imag()}, below});
  }
  report.measured_content = content_of_violation_set(flagged, prob.gauge(), prob.r());
  report.budget_margin = report.content_budget - report.measured_content.value;
  report.budget_respected = report.measured_content.value <= report.content_budget;
  return report;
}

/// Annular sampling zone for zero configurations; must exclude the origin.
struct AnnulusZone {
  double inner_radius = 0.0;
  double outer_radius = 0.0;
};

/// Deterministic pseudo-random family of log-polynomial samples with zeros in
/// the given annulus: 1 to 4 zeros per sample, multiplicities 1 to 3. The
/// same seed always reproduces the same family.
inline std::vector<SubharmonicSample> random_family(std::uint64_t seed, int count,
                                                    const AnnulusZone& zone) {
  if (count < 1) throw ValidationError("random_family: count must be >= 1");
  if (!(zone.inner_radius > 0.0)) {
    throw ValidationError("random_family: zone must exclude the origin (inner_radius > 0)");
  }
  if (!(zone.outer_radius >= zone.inner_radius) || !std::isfinite(zone.outer_radius)) {
    throw ValidationError("random_family: need inner_radius <= outer_radius < inf");
  }
  detail::SplitMix64 rng(seed);
  std::vector<SubharmonicSample> family;
  family.reserve(count);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < count; ++i) {
    const int n_zeros = rng.uniform_int(1, 4);
    std::vector<Zero> zeros;
    zeros.reserve(n_zeros);
    for (int k = 0; k < n_zeros; ++k) {
      const double rho =
          zone.inner_radius + rng.uniform() * (zone.outer_radius - zone.inner_radius);
      const double angle = two_pi * rng.uniform();
      zeros.push_back(Zero{std::polar(rho, angle), rng.uniform_int(1, 3)});
    }
    family.push_back(make_log_poly(std::move(zeros)));
  }
  return family;
}

}  // namespace minorant
