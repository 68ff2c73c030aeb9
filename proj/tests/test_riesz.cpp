#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace minorant;

namespace {

AtomicMeasure random_measure(testsupport::Rng& rng, int d, int n_atoms, double min_radius,
                             double max_radius, const Point& around) {
  std::vector<Atom> atoms;
  for (int k = 0; k < n_atoms; ++k) {
    Point loc(d);
    // Direction by normalized Gaussian-ish rejection: uniform in a cube,
    // rescaled to the wanted radius.
    double norm = 0.0;
    for (int i = 0; i < d; ++i) {
      loc[i] = rng.uniform(-1.0, 1.0);
      norm += loc[i] * loc[i];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      loc[0] = 1.0;
      norm = 1.0;
    }
    const double radius = rng.uniform(min_radius, max_radius);
    for (int i = 0; i < d; ++i) loc[i] = around[i] + loc[i] / norm * radius;
    atoms.push_back(Atom{loc, rng.uniform(0.1, 3.0)});
  }
  return AtomicMeasure(std::move(atoms));
}

}  // namespace

TEST_CASE("radial counting: empty, boundary inclusion, exclusion") {
  const Point origin{0.0, 0.0};
  CHECK(radial_counting(AtomicMeasure{}, origin, 1.0) == 0.0);

  const AtomicMeasure one(std::vector<Atom>{{Point{0.5, 0.0}, 1.0}});
  CHECK(radial_counting(one, origin, 0.5) == 1.0);   // closed ball includes its sphere
  CHECK(radial_counting(one, origin, 0.49) == 0.0);
  CHECK_THROWS_AS(radial_counting(one, origin, -1.0), DomainError);
}

TEST_CASE("radial counting is nondecreasing in t") {
  testsupport::Rng rng(61);
  const Point x{0.2, -0.1};
  const auto mu = random_measure(rng, 2, 8, 0.05, 1.5, x);
  double prev = 0.0;
  for (double t = 0.0; t < 2.0; t += 0.01) {
    const double v = radial_counting(mu, x, t);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(prev == doctest::Approx(mu.total_mass()));
}

TEST_CASE("integrated counting: closed-form spot values") {
  const Point origin{0.0, 0.0};

  // d = 2, unit atom at distance r/e integrates to exactly 1.
  const double r = 1.0;
  const AtomicMeasure at_e(std::vector<Atom>{{Point{r / std::numbers::e, 0.0}, 1.0}});
  CHECK(integrated_counting(at_e, origin, r, Dimension(2)).finite_value() ==
        doctest::Approx(1.0).epsilon(1e-12));

  // d = 3, unit atom at rho = 1/2 with r = 1: 1/rho - 1/r = 1.
  const AtomicMeasure at_half(std::vector<Atom>{{Point{0.5, 0.0, 0.0}, 1.0}});
  CHECK(integrated_counting(at_half, Point{0.0, 0.0, 0.0}, 1.0, Dimension(3)).finite_value() ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK(integrated_counting(AtomicMeasure{}, origin, 2.0, Dimension(2)) == ExtendedReal(0.0));

  const AtomicMeasure at_center(std::vector<Atom>{{origin, 0.5}});
  CHECK(integrated_counting(at_center, origin, 1.0, Dimension(2)).is_plus_infinity());
  CHECK(integrated_counting(at_center, origin, 0.0, Dimension(2)) == ExtendedReal(0.0));

  CHECK_THROWS_AS(integrated_counting(at_e, origin, 1.0, Dimension(1)), DomainError);
}

TEST_CASE("integrated counting: closed form equals direct quadrature") {
  testsupport::Rng rng(67);
  for (int d : {2, 3, 4}) {
    Point x(d, 0.0);
    for (int i = 0; i < d; ++i) x[i] = rng.uniform(-0.3, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
      const double r = rng.uniform(0.8, 2.0);
      const auto mu = random_measure(rng, d, rng.uniform_int(1, 8), 0.05, 1.5 * r, x);
      const double closed = integrated_counting(mu, x, r, Dimension(d)).finite_value();
      const double quad = testsupport::counting_quadrature_oracle(mu, x, r, d, 1e-12);
      CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
    }
  }
}

TEST_CASE("integrated counting: additivity over measures is exact") {
  testsupport::Rng rng(71);
  const Point x{0.1, 0.2};
  const auto mu1 = random_measure(rng, 2, 5, 0.1, 1.0, x);
  const auto mu2 = random_measure(rng, 2, 4, 0.2, 1.4, x);
  const double r = 1.2;
  const double split = integrated_counting(mu1, x, r, Dimension(2)).finite_value() +
                       integrated_counting(mu2, x, r, Dimension(2)).finite_value();
  const double joint = integrated_counting(mu1 + mu2, x, r, Dimension(2)).finite_value();
  CHECK(joint == doctest::Approx(split).epsilon(1e-15));
}

TEST_CASE("integrated counting: monotone in r and in mass") {
  testsupport::Rng rng(73);
  const Point x{0.0, 0.0};
  const auto mu = random_measure(rng, 2, 6, 0.05, 1.0, x);
  double prev = 0.0;
  for (double r = 0.01; r < 1.6; r += 0.02) {
    const double v = integrated_counting(mu, x, r, Dimension(2)).finite_value();
    CHECK(v >= prev - 1e-15);
    prev = v;
  }

  std::vector<Atom> heavier;
  for (const auto& a : mu.atoms()) heavier.push_back({a.location, 2.0 * a.mass});
  const double doubled =
      integrated_counting(AtomicMeasure(heavier), x, 1.0, Dimension(2)).finite_value();
  CHECK(doubled ==
        doctest::Approx(2.0 * integrated_counting(mu, x, 1.0, Dimension(2)).finite_value())
            .epsilon(1e-14));
}

TEST_CASE("restriction keeps exactly the atoms of the closed ball") {
  const AtomicMeasure mu(std::vector<Atom>{
      {Point{0.5, 0.0}, 1.0}, {Point{1.0, 0.0}, 2.0}, {Point{1.5, 0.0}, 3.0}});
  const auto inside = mu.restricted_to(Ball{Point{0.0, 0.0}, 1.0});
  CHECK(inside.atoms().size() == 2);
  CHECK(inside.total_mass() == 3.0);
}

TEST_CASE("atomic measures validate their atoms") {
  CHECK_THROWS_AS(AtomicMeasure(std::vector<Atom>{{Point{0.0}, -1.0}}), ValidationError);
  CHECK_THROWS_AS(AtomicMeasure(std::vector<Atom>{{Point{}, 1.0}}), ValidationError);
  CHECK_THROWS_AS(AtomicMeasure(std::vector<Atom>{{Point{0.0, 0.0}, 1.0}, {Point{0.0}, 1.0}}),
                  ValidationError);
}
