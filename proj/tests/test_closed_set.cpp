#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dmu/boundary_set.hpp"
#include "dmu/closed_set.hpp"
#include "dmu/fit.hpp"
#include "dmu/measure.hpp"
#include "test_util.hpp"

using namespace dmu;

namespace {

// brute-force optimal circular cover: best greedy over all candidate starts
long covering_brute(const ClosedSet& e, double eps) {
  long best = 1L << 30;
  for (const Gap& g : e.gaps()) {
    double start = wrap_angle(g.end());
    long count = 0;
    double pos = start;
    bool done = false;
    while (!done) {
      ++count;
      double covered = pos + 2.0 * eps;
      if (covered >= start + two_pi - 1e-15) break;
      // next set point strictly after covered
      double next = covered + two_pi;  // sentinel
      for (const Gap& h : e.gaps()) {
        for (int k = -1; k <= 1; ++k) {
          double cand = wrap_angle(h.end()) + k * two_pi;
          double cs = wrap_angle(h.start) + k * two_pi;
          // set points are gap complements; candidates: first point after
          // `covered` is either `covered` itself (if in E) or a gap end
          if (cand > covered + 1e-15 && cand < next) next = cand;
          (void)cs;
        }
      }
      // if covered lands inside E, the next arc may start right there
      if (e.distance(covered) <= 1e-15) next = covered + 1e-15;
      if (next >= start + two_pi - 1e-15) break;
      pos = next;
      if (count > 10000) break;
    }
    best = std::min(best, count);
  }
  return best;
}

}  // namespace

TEST_CASE("gap census and thickened length on simple sets") {
  const ClosedSet point = ClosedSet::from_points({0.0});
  CHECK(point.n_count(0.5) == 2);
  CHECK(point.n_count(3.0) == 2);
  CHECK(point.thickened_length(0.25) == doctest::Approx(0.5));
  CHECK(point.measure() == doctest::Approx(0.0));

  const ClosedSet anti = ClosedSet::from_points({0.0, wrap_angle(pi)});
  CHECK(anti.n_count(0.5) == 4);
  CHECK(anti.n_count(pi / 2.0 + 0.01) == 0);
  CHECK(anti.thickened_length(0.1) == doctest::Approx(0.4));

  const ClosedSet full = ClosedSet::full_circle();
  CHECK(full.thickened_length(0.1) == doctest::Approx(two_pi));

  // t at least the largest half gap: the whole circle
  CHECK(point.thickened_length(pi) == doctest::Approx(two_pi));
}

TEST_CASE("N_E integrates to |E_t| for measure-zero sets") {
  const ClosedSet e = ClosedSet::from_points({-2.0, -0.3, 0.4, 1.9});
  double longest_half = 0.0;
  for (const Gap& g : e.gaps()) longest_half = std::max(longest_half, 0.5 * g.length);
  for (double t : {0.05, 0.2, 0.6}) {
    if (t >= longest_half) continue;
    const double integral = integrate_adaptive(
        [&](double s) { return static_cast<double>(e.n_count(s)); }, 1e-9, t, 1e-10);
    CHECK(integral == doctest::Approx(e.thickened_length(t)).epsilon(1e-6));
  }
}

TEST_CASE("cantor gap census matches generation counts") {
  const ClosedSet e = ClosedSet::cantor(1.0 / 3.0, 8, -1.0, 1.0);
  // generation g: 2^{g-1} gaps of length 2/3^g inside the base arc, plus the
  // complement gap of length 2*pi - 2
  CHECK(static_cast<long>(e.gaps().size()) == (1L << 8) - 1 + 1);
  long expected = 0;
  const double t = 0.5 * (2.0 / 27.0) * 0.999;  // just below half of generation-3 gaps
  for (int g = 1; g <= 8; ++g)
    if (2.0 / std::pow(3.0, g) > 2.0 * t) expected += (1L << (g - 1));
  expected += 1;  // complement gap
  CHECK(e.n_count(t) == 2 * expected);
}

TEST_CASE("covering number: point, full circle, small cantor vs brute force") {
  const ClosedSet point = ClosedSet::from_points({0.7});
  CHECK(point.covering_number(0.3) == 1);

  const ClosedSet full = ClosedSet::full_circle();
  CHECK(full.covering_number(0.1) == static_cast<long>(std::ceil(pi / 0.1)));

  const ClosedSet cantor = ClosedSet::cantor(1.0 / 3.0, 6, -1.0, 1.0);
  for (double eps : {std::pow(3.0, -5.0), std::pow(3.0, -4.0), 0.05}) {
    const long greedy = cantor.covering_number(eps);
    const long brute = covering_brute(cantor, eps);
    CHECK(greedy >= brute);
    CHECK(greedy <= brute + 1);
  }
  // monotone in eps
  long prev = 1L << 30;
  for (double eps = 0.01; eps < 1.0; eps *= 1.5) {
    const long c = cantor.covering_number(eps);
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("thickened length scaling exponent of the middle-thirds set") {
  const ClosedSet e = ClosedSet::cantor(1.0 / 3.0, 22, -1.0, 1.0);
  std::vector<double> ts, vals;
  for (int j = 4; j <= 13; ++j) {
    const double t = std::pow(3.0, -j);
    ts.push_back(t);
    vals.push_back(e.thickened_length(t));
  }
  const PowerFit fit = power_law_fit(ts, vals);
  const double expect = 1.0 - std::log(2.0) / std::log(3.0);
  CHECK(std::abs(fit.exponent - expect) <= 0.02);
}

TEST_CASE("covering-number/thickened-length sandwich") {
  const ClosedSet e = ClosedSet::cantor(0.3, 10, -0.5, 1.3);
  for (int j = 2; j <= 10; ++j) {
    const double eps = std::pow(0.5, j);
    const double n = static_cast<double>(e.covering_number(eps));
    const double et = e.thickened_length(eps);
    CHECK(eps * n <= et + 1e-12);
    CHECK(et <= 4.0 * eps * n + 1e-12);
  }
}

TEST_CASE("m_psi: linear weight collapses to |E_s|, convex picks ratio branch") {
  const ClosedSet e = ClosedSet::from_points({-1.2, 0.3, 2.2});
  const AdmissibleWeight lin = AdmissibleWeight::power(1.0, 1.0);
  for (double s : {0.05, 0.2, 0.5}) {
    CHECK(m_psi(e, lin, s) == doctest::Approx(e.thickened_length(s)).epsilon(1e-8));
  }

  const ClosedSet point = ClosedSet::from_points({0.0});
  const AdmissibleWeight quad = AdmissibleWeight::power(1.0, 2.0);
  // N == 2 below the (only) half-gap pi, |E_s| = 2s: ratio branch gives 2s^2,
  // integral branch gives s^2
  for (double s : {0.1, 0.4, 1.0})
    CHECK(m_psi(point, quad, s) == doctest::Approx(2.0 * s * s).epsilon(1e-8));

  SUBCASE("branch selection follows the declared shape") {
    const ClosedSet cant = ClosedSet::cantor(1.0 / 3.0, 8, -1.0, 1.0);
    const AdmissibleWeight half = AdmissibleWeight::power(1.0, 0.5);
    MPsiEvaluator ev_half(cant, half);
    MPsiEvaluator ev_quad(cant, quad);
    for (double s : {0.02, 0.1, 0.7}) {
      CHECK(ev_half(s) == doctest::Approx(ev_half.integral_branch(s)));
      CHECK(ev_quad(s) == doctest::Approx(ev_quad.ratio_branch(s)));
    }
  }

  SUBCASE("dense-grid oracle for a fractional power") {
    const ClosedSet cant = ClosedSet::cantor(1.0 / 3.0, 6, -1.0, 1.0);
    const AdmissibleWeight w = AdmissibleWeight::power(1.0, 1.5);
    MPsiEvaluator ev(cant, w);
    for (double s : {0.05, 0.3}) {
      // trapezoid refinement oracle for the integral branch
      double acc = 0.0;
      const int nsteps = 200000;
      for (int i = 0; i < nsteps; ++i) {
        const double t0 = s * i / nsteps, t1 = s * (i + 1) / nsteps;
        const double tm = 0.5 * (t0 + t1);
        acc += std::pow(tm, 0.5) * static_cast<double>(cant.n_count(tm)) * (t1 - t0);
      }
      CHECK(ev.integral_branch(s) == doctest::Approx(acc).epsilon(1e-4));
      CHECK(ev(s) == doctest::Approx(std::max(acc, ev.ratio_branch(s))).epsilon(1e-4));
    }
  }

  SUBCASE("m_psi is nondecreasing in s") {
    const ClosedSet cant = ClosedSet::cantor(0.25, 7, 0.0, 2.0);
    const AdmissibleWeight w = AdmissibleWeight::power(0.7, 1.2);
    MPsiEvaluator ev(cant, w);
    double prev = 0.0;
    for (double s = 0.01; s <= two_pi; s *= 1.3) {
      const double v = ev(s);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("invalid weights are rejected") {
  AdmissibleWeight bad;
  bad.psi = [](double t) { return 1.0 / (1.0 + t); };  // decreasing
  bad.shape = WeightShape::concave;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);

  AdmissibleWeight wrong_shape;
  wrong_shape.psi = [](double t) { return t * t; };
  wrong_shape.shape = WeightShape::concave;  // actually convex
  wrong_shape.alpha = 2.0;
  CHECK_THROWS_AS(wrong_shape.validate(), Error);
}

TEST_CASE("local modulus: full circle, far dirac, distance-power fit") {
  const Measure leb = Measure::lebesgue();
  const ClosedSet full = ClosedSet::full_circle();
  for (double t : {0.1, 0.9})
    CHECK(local_modulus(leb, full, t) ==
          doctest::Approx(leb.modulus_of_continuity(t)).epsilon(1e-9));

  const Measure far_dirac = Measure::dirac(wrap_angle(pi));
  const ClosedSet origin = ClosedSet::from_points({0.0});
  CHECK(local_modulus(far_dirac, origin, 0.5) == doctest::Approx(0.0));
  CHECK(local_modulus(far_dirac, origin, 3.0) == doctest::Approx(0.0));
  CHECK(local_modulus(far_dirac, origin, pi) == doctest::Approx(1.0));

  // mu = dist(.,K)^beta dm with K = E: local modulus ~ t^{1+beta}
  const ClosedSet k = ClosedSet::cantor(1.0 / 3.0, 10, -1.0, 1.0);
  const double beta = 0.5;
  auto dens = std::make_shared<PowerGapDensity>(1.0, beta, k);
  const Measure mu = Measure::from_parts({}, dens, std::nullopt);
  const PowerFit fit = local_modulus_power_fit(mu, k, 4, 12);
  CHECK(std::abs(fit.exponent - (1.0 + beta)) <= 0.08);

  SUBCASE("local modulus never exceeds the global modulus") {
    for (unsigned seed : {41u, 42u}) {
      const Measure m = dmu_test::random_measure(seed);
      const ClosedSet e = ClosedSet::from_points({-2.0, 0.5, 1.0});
      for (double t : {0.08, 0.5, 1.5})
        CHECK(local_modulus(m, e, t) <= m.modulus_of_continuity(t) + 1e-9);
    }
  }
}
