#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>

#include "dmu/measure.hpp"
#include "test_util.hpp"

using namespace dmu;
using dmu_test::random_measure;

TEST_CASE("arc mass: dirac, lebesgue, cantor halves") {
  const Measure dirac = Measure::dirac(0.0);
  CHECK(dirac.arc_mass(Arc{0.0, 0.1}) == doctest::Approx(1.0));
  CHECK(dirac.arc_mass(Arc{pi, 0.1}) == doctest::Approx(0.0));
  // closed-arc convention: atom sitting exactly on the boundary is included
  CHECK(dirac.arc_mass(Arc{0.1, 0.1}) == doctest::Approx(1.0));
  CHECK(dirac.arc_mass(Arc{0.0, 0.0}) == doctest::Approx(1.0));

  const Measure leb = Measure::lebesgue();
  for (double s : {0.1, 0.5, 1.0, 2.0})
    CHECK(leb.arc_mass(Arc{0.3, s}) == doctest::Approx(s / pi).epsilon(1e-12));

  CantorPart cp;
  cp.ratio = 1.0 / 3.0;
  cp.depth = 20;
  cp.mass = 1.0;
  cp.base_lo = -1.0;
  cp.base_hi = 1.0;
  const Measure cantor = Measure::from_parts({}, nullptr, cp);
  // left half of the base arc carries half the mass (self-similarity);
  // brute-force count over the materialized atoms is the oracle
  const Arc left_half = Arc::from_endpoints(-1.0, 0.0);
  const double brute = dmu_test::arc_mass_points_brute(cantor, left_half);
  CHECK(cantor.arc_mass(left_half) == doctest::Approx(brute).epsilon(1e-12));
  CHECK(cantor.arc_mass(left_half) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("arc mass is monotone under inclusion and additive over halves") {
  for (unsigned seed : {1u, 2u, 3u, 4u}) {
    const Measure mu = random_measure(seed, true, true);
    for (double h : {0.2, 0.7, 1.4}) {
      const double small = mu.arc_mass(Arc{0.4, h});
      const double big = mu.arc_mass(Arc{0.4, h + 0.3});
      CHECK(small <= big + 1e-12);
    }
    // additive over disjoint arcs, up to shared-boundary atoms (none at these
    // irrational endpoints for the generated atom angles with prob. 1)
    const double whole = mu.arc_mass(Arc::from_endpoints(0.1, 1.7));
    const double a = mu.arc_mass(Arc::from_endpoints(0.1, 0.9));
    const double b = mu.arc_mass(Arc::from_endpoints(0.9, 1.7));
    const double atom_at_cut = mu.arc_mass(Arc{0.9, 0.0});
    CHECK(a + b - atom_at_cut == doctest::Approx(whole).epsilon(1e-10));
  }
}

TEST_CASE("poisson integral: mean value, dirac closed form, cantor vs brute") {
  const Measure leb = Measure::lebesgue();
  for (double r : {0.0, 0.3, 0.9})
    for (double a : {0.0, 1.1})
      CHECK(leb.poisson(std::polar(r, a)) == doctest::Approx(1.0).epsilon(1e-9));

  const Measure dirac = Measure::dirac(0.0);
  CHECK(dirac.poisson(Complex(0.5, 0.0)) == doctest::Approx(3.0).epsilon(1e-12));

  for (int depth : {19, 20}) {
    CantorPart cp;
    cp.ratio = 1.0 / 3.0;
    cp.depth = depth;
    cp.mass = 1.0;
    cp.base_lo = -1.0;
    cp.base_hi = 1.0;
    const Measure cantor = Measure::from_parts({}, nullptr, cp);
    const Complex z(0.9, 0.0);
    const double brute = detail::poisson_point_masses_direct(cantor, z);
    CHECK(cantor.poisson(z) == doctest::Approx(brute).epsilon(1e-6));
  }

  SUBCASE("poisson at 0 equals total mass") {
    for (unsigned seed : {5u, 6u, 7u}) {
      const Measure mu = random_measure(seed, true, true);
      CHECK(mu.poisson(Complex(0.0, 0.0)) == doctest::Approx(mu.total_mass()).epsilon(1e-10));
    }
  }

  SUBCASE("guard band") {
    CHECK_THROWS_AS((void)Measure::lebesgue().poisson(Complex(1.0 - 0x1p-50, 0.0)), Error);
  }
}

TEST_CASE("f_mu: dirac, lebesgue closed form, monotonicity") {
  const Measure dirac = Measure::dirac(0.0);
  for (double x : {0.01, 0.3, 3.0}) CHECK(dirac.f_mu(x) == doctest::Approx(1.0));

  // normalized Lebesgue: F(x) = (x/pi) * arctan(pi/x)
  const Measure leb = Measure::lebesgue();
  for (double x : {0.05, 0.4, 1.0, 3.0})
    CHECK(leb.f_mu(x) == doctest::Approx(x / pi * std::atan(pi / x)).epsilon(1e-8));

  for (unsigned seed : {11u, 12u, 13u}) {
    const Measure mu = random_measure(seed, false);
    double prev_f = 0.0, prev_ratio = HUGE_VAL;
    for (int j = 20; j >= 1; --j) {
      const double x = std::pow(0.5, j);
      const double f = mu.f_mu(x);
      CHECK(f >= prev_f - 1e-12);
      const double ratio = f / (x * x);
      CHECK(ratio <= prev_ratio * (1.0 + 1e-10));
      prev_f = f;
      prev_ratio = ratio;
    }
    // brute-force cross-check at one point
    const double x = 0.125;
    CHECK(mu.f_mu(x) == doctest::Approx(dmu_test::f_mu_points_brute(mu, x)).epsilon(1e-10));
  }
}

TEST_CASE("fourier moments: orthogonality, dirac, cantor product formula") {
  const Measure leb = Measure::lebesgue();
  CHECK(std::abs(leb.fourier_moment(3)) == doctest::Approx(0.0));
  CHECK(leb.fourier_moment(0).real() == doctest::Approx(1.0));

  const Measure dirac = Measure::dirac(0.0);
  for (long k : {1L, 5L, 100L}) {
    CHECK(dirac.fourier_moment(k).real() == doctest::Approx(1.0));
    CHECK(dirac.fourier_moment(k).imag() == doctest::Approx(0.0));
  }

  CantorPart cp;
  cp.ratio = 1.0 / 3.0;
  cp.depth = 20;
  cp.mass = 1.0;
  cp.base_lo = 0.2;
  cp.base_hi = 1.7;
  const Measure cantor = Measure::from_parts({}, nullptr, cp);
  for (long k : {1L, 5L, 37L}) {
    const Complex brute = dmu_test::moment_points_brute(cantor, k);
    const Complex prod = cantor.fourier_moment(k);
    CHECK(std::abs(prod - brute) <= 1e-10);
  }

  SUBCASE("conjugate symmetry is bit-exact") {
    for (unsigned seed : {21u, 22u}) {
      const Measure mu = random_measure(seed, true, true);
      for (long k : {1L, 7L, 64L}) {
        const Complex a = mu.fourier_moment(k);
        const Complex b = mu.fourier_moment(-k);
        CHECK(a.real() == b.real());
        CHECK(a.imag() == -b.imag());
      }
      CHECK(mu.fourier_moment(0).real() == mu.total_mass());
    }
  }

  SUBCASE("order cap") { CHECK_THROWS_AS((void)leb.fourier_moment(100000), Error); }
}

TEST_CASE("modulus of continuity") {
  const Measure leb = Measure::lebesgue();
  for (double t : {0.1, 0.7, 2.0})
    CHECK(leb.modulus_of_continuity(t) == doctest::Approx(t / pi).epsilon(1e-6));

  const Measure dirac = Measure::dirac(0.3);
  for (double t : {0.01, 1.0}) CHECK(dirac.modulus_of_continuity(t) == doctest::Approx(1.0));

  const Measure two = Measure::from_parts(
      {Atom{0.0, 0.3}, Atom{wrap_angle(pi), 0.7}}, nullptr, std::nullopt);
  CHECK(two.modulus_of_continuity(0.5) == doctest::Approx(0.7));
  CHECK(two.modulus_of_continuity(1.5) == doctest::Approx(0.7));
  // once the half-length reaches pi/2 a single arc captures both atoms
  CHECK(two.modulus_of_continuity(1.6) == doctest::Approx(1.0));
  CHECK(two.modulus_of_continuity(pi) == doctest::Approx(1.0));
}

TEST_CASE("panel masses sum to the total and split atoms deterministically") {
  for (unsigned seed : {31u, 32u}) {
    const Measure mu = random_measure(seed, true, true);
    const auto nu = mu.panel_masses(256);
    double s = 0.0;
    for (double v : nu) s += v;
    CHECK(s == doctest::Approx(mu.total_mass()).epsilon(1e-10));
  }
}

TEST_CASE("invalid cantor parts are rejected") {
  CantorPart cp;
  cp.ratio = 0.6;  // cells would overlap
  CHECK_THROWS_AS((void)Measure::from_parts({}, nullptr, cp), Error);
  cp.ratio = 0.3;
  cp.depth = 0;
  CHECK_THROWS_AS((void)Measure::from_parts({}, nullptr, cp), Error);
}

TEST_CASE("power-gap density: exact arc integrals and poisson consistency") {
  // mu-hat(t) ~ t^{1/2}: density |theta|^{-1/2} (up to normalization)
  auto dens = std::make_shared<PowerGapDensity>(PowerGapDensity::centered(0.25, -0.5, 0.0));
  const Measure mu = Measure::from_parts({}, dens, std::nullopt);
  // arc around the singular center: integral 2 * c * (t^{1/2}) / (1/2)
  for (double t : {0.01, 0.1, 0.5}) {
    const double expect = 2.0 * 0.25 * std::sqrt(t) / 0.5;
    CHECK(mu.arc_mass(Arc{0.0, t}) == doctest::Approx(expect).epsilon(1e-12));
  }
  // quadrature path: the Poisson integral at 0 equals the total mass
  CHECK(mu.poisson(Complex(0.0, 0.0)) == doctest::Approx(mu.total_mass()).epsilon(1e-10));
  CHECK(mu.poisson(Complex(0.5, 0.2)) > 0.0);
}
