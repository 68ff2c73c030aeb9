#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "support.hpp"

using namespace minorant;
using std::complex;

TEST_CASE("ball center distance: closed-form spot values") {
  CHECK(ball_center_distance(Dimension(2), 1.0, 0.0).value == 1.0);
  CHECK(ball_center_distance(Dimension(2), 1.0, 0.5).value == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(ball_center_distance(Dimension(3), 1.0, 0.5).value == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(ball_center_distance(Dimension(2), 1.0, 0.5).exact);
  CHECK_THROWS_WITH_AS(ball_center_distance(Dimension(2), 1.0, 1.0), doctest::Contains("outside"),
                       DomainError);
  CHECK_THROWS_AS(ball_center_distance(Dimension(2), 1.0, -0.1), DomainError);
}

TEST_CASE("ball center distance increases with the distance to the center") {
  for (int d = 1; d <= 5; ++d) {
    double prev = 0.0;
    for (double rho = 0.0; rho < 0.95; rho += 0.05) {
      const double v = ball_center_distance(Dimension(d), 1.0, rho).value;
      CHECK(v >= 1.0);
      CHECK(v > prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("subordination: enlarging the ball shrinks the distance") {
  testsupport::Rng rng(23);
  for (int d = 1; d <= 5; ++d) {
    for (int trial = 0; trial < 100; ++trial) {
      const double r1 = rng.uniform(0.2, 1.0);
      const double r2 = r1 + rng.uniform(0.05, 1.0);
      const double rho = rng.uniform(0.0, r1 * 0.99);
      CHECK(ball_center_distance(Dimension(d), r2, rho).value <=
            ball_center_distance(Dimension(d), r1, rho).value + 1e-12);
    }
  }
}

TEST_CASE("pair upper bound via the triangle inequality") {
  const Point origin{0.0, 0.0};
  CHECK(ball_pair_upper(Dimension(2), 1.0, origin, origin).value == 1.0);
  CHECK(ball_pair_upper(Dimension(2), 1.0, Point{0.5, 0.0}, Point{0.0, 0.5}).value ==
        doctest::Approx(9.0).epsilon(1e-15));
  CHECK(ball_pair_upper(Dimension(2), 1.0, Point{0.5, 0.0}, origin).value ==
        doctest::Approx(3.0).epsilon(1e-15));
  CHECK(!ball_pair_upper(Dimension(2), 1.0, origin, origin).exact);
  CHECK_THROWS_AS(ball_pair_upper(Dimension(2), 1.0, Point{1.5, 0.0}, origin), DomainError);
  CHECK_THROWS_AS(ball_pair_upper(Dimension(2), 1.0, Point{0.5, 0.0, 0.0}, origin), DomainError);
}

TEST_CASE("punctured disc circle bound") {
  CHECK(punctured_disc_circle_bound(1.0 / 3.0).value == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(punctured_disc_circle_bound(0.5).value == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(punctured_disc_circle_bound(1e-9).value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(punctured_disc_circle_bound(0.0), DomainError);
  CHECK_THROWS_AS(punctured_disc_circle_bound(1.0), DomainError);
}

TEST_CASE("poisson oracle: identical points, symmetry, center agreement") {
  const complex<double> x(0.3, -0.2);
  CHECK(poisson_disc_distance(x, x, 1e-9).value == doctest::Approx(1.0).epsilon(1e-12));

  const complex<double> y(-0.1, 0.55);
  const double xy = poisson_disc_distance(x, y, 1e-9).value;
  const double yx = poisson_disc_distance(y, x, 1e-9).value;
  CHECK(xy == yx);

  const double oracle = poisson_disc_distance(complex<double>(0.5, 0.0), 0.0, 1e-9).value;
  CHECK(oracle == doctest::Approx(3.0).epsilon(1e-9));

  CHECK_THROWS_AS(poisson_disc_distance(complex<double>(1.0, 0.0), 0.0, 1e-9), DomainError);
  CHECK_THROWS_AS(poisson_disc_distance(x, y, 0.0), DomainError);
}

TEST_CASE("poisson oracle agrees with the closed form against the center") {
  testsupport::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const complex<double> x = std::polar(rng.uniform(0.0, 0.9), rng.uniform(0.0, 2 * std::numbers::pi));
    const double expected = ball_center_distance(Dimension(2), 1.0, std::abs(x)).value;
    const double oracle = poisson_disc_distance(x, 0.0, 1e-9).value;
    CHECK(std::abs(oracle - expected) <= 1e-6 * expected);
  }
}

TEST_CASE("poisson oracle never exceeds the triangle upper bound") {
  testsupport::Rng rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const complex<double> x = std::polar(rng.uniform(0.0, 0.85), rng.uniform(0.0, 6.28));
    const complex<double> y = std::polar(rng.uniform(0.0, 0.85), rng.uniform(0.0, 6.28));
    const double triangle =
        ball_pair_upper(Dimension(2), 1.0, Point{x.real(), x.imag()}, Point{y.real(), y.imag()})
            .value;
    const double oracle = poisson_disc_distance(x, y, 1e-9).value;
    CHECK(oracle <= triangle + 1e-9);
  }
}

TEST_CASE("an impossible angle tolerance reports a numeric failure with its bracket") {
  try {
    poisson_disc_distance(complex<double>(0.4, 0.1), complex<double>(-0.2, 0.3), 1e-300);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.bracket_low() < e.bracket_high());
  }
}

TEST_CASE("sampled harmonic functions respect the oracle distance") {
  testsupport::Rng rng(41);
  for (int fn = 0; fn < 50; ++fn) {
    std::vector<BoundaryAtom> atoms;
    const int n = rng.uniform_int(1, 5);
    for (int k = 0; k < n; ++k) {
      atoms.push_back({rng.uniform(0.0, 2 * std::numbers::pi), rng.uniform(0.1, 3.0)});
    }
    const BoundaryAtomMeasure mu(atoms);
    for (int pair = 0; pair < 20; ++pair) {
      const complex<double> x = std::polar(rng.uniform(0.0, 0.9), rng.uniform(0.0, 6.28));
      const complex<double> y = std::polar(rng.uniform(0.0, 0.9), rng.uniform(0.0, 6.28));
      const double t = poisson_disc_distance(x, y, 1e-10).value;
      const double hx = mu.poisson_integral(x);
      const double hy = mu.poisson_integral(y);
      CHECK(hx <= t * hy * (1.0 + 1e-10));
      CHECK(hy <= t * hx * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("single-atom kernels make the center bound sharp") {
  for (double rho = 0.1; rho < 0.95; rho += 0.1) {
    const complex<double> x(rho, 0.0);
    const double target = (1.0 + rho) / (1.0 - rho);
    double best = 0.0;
    for (int j = 0; j < 4096; ++j) {
      const double angle = 2.0 * std::numbers::pi * j / 4096;
      const BoundaryAtomMeasure mu({{angle, 1.0}});
      best = std::max(best, mu.poisson_integral(x) / mu.poisson_integral({0.0, 0.0}));
    }
    CHECK(best >= target - 1e-6);
    CHECK(best <= target + 1e-9);
  }
}

TEST_CASE("the oracle is invariant under kernel rescaling") {
  // Recompute the distance with the unnormalized kernel (1-|x|^2)/|z-x|^2;
  // the constant factor must cancel in every ratio.
  const complex<double> x(0.45, 0.15);
  const complex<double> y(-0.3, 0.4);
  const auto unnormalized_sup = [&](complex<double> num, complex<double> den) {
    double best = 0.0;
    for (int j = 0; j < 200000; ++j) {
      const double th = 2.0 * std::numbers::pi * j / 200000;
      const complex<double> zeta = std::polar(1.0, th);
      const double ratio = ((1.0 - std::norm(num)) / std::norm(zeta - num)) /
                           ((1.0 - std::norm(den)) / std::norm(zeta - den));
      best = std::max(best, ratio);
    }
    return best;
  };
  const double expected = std::max(unnormalized_sup(x, y), unnormalized_sup(y, x));
  CHECK(poisson_disc_distance(x, y, 1e-10).value == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("punctured harmonic samples: construction and evaluation") {
  const BoundaryAtomMeasure single({{0.0, 1.0}});
  const auto pure_poisson = punctured_harmonic_sample(0.0, single);
  CHECK(pure_poisson({0.0, 0.0}).finite_value() ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));

  const auto with_log = punctured_harmonic_sample(1.0, BoundaryAtomMeasure({{0.0, 1e-12}}));
  CHECK(with_log({0.0, 0.0}).is_plus_infinity());
  // On the boundary the logarithmic part vanishes and the kernel part is 0
  // away from the atom.
  const complex<double> w = std::polar(1.0, 2.0);
  CHECK(with_log(w).finite_value() == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(punctured_harmonic_sample(-1.0, single), ValidationError);
  CHECK_THROWS_AS(BoundaryAtomMeasure({}), ValidationError);
  CHECK_THROWS_AS(BoundaryAtomMeasure({{0.0, 0.0}}), ValidationError);
}

TEST_CASE("punctured samples satisfy the two-sided circle bound") {
  testsupport::Rng rng(47);
  for (double R : {0.2, 0.5, 0.8}) {
    const double hi = punctured_disc_circle_bound(R).value;
    const double lo = 1.0 / hi;
    for (int fn = 0; fn < 40; ++fn) {
      std::vector<BoundaryAtom> atoms;
      const int n = rng.uniform_int(1, 4);
      for (int k = 0; k < n; ++k) {
        atoms.push_back({rng.uniform(0.0, 6.28), rng.uniform(0.05, 2.0)});
      }
      const auto h = punctured_harmonic_sample(rng.uniform(0.0, 2.0), BoundaryAtomMeasure(atoms));
      for (int pair = 0; pair < 40; ++pair) {
        const auto w = std::polar(R, rng.uniform(0.0, 6.28));
        const auto w0 = std::polar(R, rng.uniform(0.0, 6.28));
        const double ratio = h(w).finite_value() / h(w0).finite_value();
        CHECK(ratio >= lo * (1.0 - 1e-10));
        CHECK(ratio <= hi * (1.0 + 1e-10));
      }
    }
  }
}

TEST_CASE("ball center oracle matches the closed form for d = 3") {
  testsupport::Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const double rho = rng.uniform(0.0, 0.9);
    const double expected = ball_center_distance(Dimension(3), 1.0, rho).value;
    const double oracle = ball_center_poisson_oracle(Dimension(3), rho, 1e-9).value;
    CHECK(std::abs(oracle - expected) <= 1e-6 * expected);
  }
  CHECK_THROWS_AS(ball_center_poisson_oracle(Dimension(1), 0.5, 1e-9), DomainError);
}
