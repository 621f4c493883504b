#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dmu/sobolev.hpp"

using namespace dmu;

TEST_CASE("l_kernel closed forms and symmetry") {
  const SobolevWeight x2 = SobolevWeight::power(2.0);
  for (double a : {0.01, 0.1, 1.0})
    CHECK(l_kernel(x2, a, a) == doctest::Approx(1.0 / a - 1.0 / two_pi).epsilon(1e-9));

  const SobolevWeight x1 = SobolevWeight::power(1.0);
  for (double a : {0.01, 0.1, 1.0})
    CHECK(l_kernel(x1, a, a) == doctest::Approx(std::log(two_pi / a)).epsilon(1e-9));

  CHECK(l_kernel(x2, two_pi, 0.3) == doctest::Approx(0.0));
  CHECK(l_kernel(x2, 0.2, 1.3) == l_kernel(x2, 1.3, 0.2));  // depends on max only
  CHECK(l_kernel(x2, 0.2, 1.3) == l_kernel(x2, 1.3, 1.3));
}

TEST_CASE("k_diag_estimate values and monotonicity") {
  const SobolevWeight x2 = SobolevWeight::power(2.0);
  CHECK(k_diag_estimate(x2, 0.1) == doctest::Approx(1.0 + 10.0 - 1.0 / two_pi).epsilon(1e-9));

  const SobolevWeight one = SobolevWeight::constant(1.0);
  for (double a : {0.2, 1.0})
    CHECK(k_diag_estimate(one, a) == doctest::Approx(1.0 + two_pi - a).epsilon(1e-9));

  const SobolevWeight mix = SobolevWeight::sum_of_powers(2.0, 1.0);
  double prev = HUGE_VAL;
  for (double a = 0.01; a < two_pi; a *= 1.7) {
    const double k = k_diag_estimate(mix, a);
    CHECK(k <= prev + 1e-12);
    prev = k;
  }
}

TEST_CASE("reciprocal integrability classification") {
  CHECK(SobolevWeight::power(2.0).reciprocal_integrability().trend == Trend::divergent);
  CHECK(SobolevWeight::power(1.0).reciprocal_integrability().trend == Trend::divergent);
  CHECK(SobolevWeight::power(0.25).reciprocal_integrability().trend == Trend::convergent);
  CHECK(SobolevWeight::constant(5.0).reciprocal_integrability().trend == Trend::convergent);
}

TEST_CASE("reproducing identity of the zero-boundary kernel") {
  // random piecewise-linear f with f(2*pi) = 0; the pairing
  // int f'(x) dL(x,s)/dx phi(x) dx recovers f(s). dL/dx comes from a centered
  // difference of l_kernel, so the check is independent of the closed form.
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (const SobolevWeight& w : {SobolevWeight::power(1.0), SobolevWeight::power(2.0),
                                 SobolevWeight::sum_of_powers(2.0, 1.0)}) {
    for (int rep = 0; rep < 7; ++rep) {
      const int segs = 6;
      std::vector<double> xs(segs + 1), ys(segs + 1);
      for (int i = 0; i <= segs; ++i)
        xs[i] = 0.3 + (two_pi - 0.3) * static_cast<double>(i) / segs;
      for (int i = 0; i < segs; ++i) ys[i] = unif(rng);
      ys[segs] = 0.0;
      auto f_at = [&](double x) {
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t i =
            std::min<std::size_t>(std::max<std::ptrdiff_t>(it - xs.begin() - 1, 0), segs - 1);
        const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
        return ys[i] * (1.0 - t) + ys[i + 1] * t;
      };
      const double s = 0.7;
      const double eps = 1e-6;
      auto dl = [&](double x) {
        return (l_kernel(w, x + eps, s) - l_kernel(w, x - eps, s)) / (2.0 * eps);
      };
      double pairing = 0.0;
      for (int i = 0; i < segs; ++i) {
        const double slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        // split each segment at s (kink of dL/dx)
        for (auto [a, b] : {std::pair<double, double>{xs[i], std::min(xs[i + 1], s)},
                            std::pair<double, double>{std::max(xs[i], s), xs[i + 1]}}) {
          if (b - a > 2.5 * eps)
            pairing += integrate_adaptive(
                [&](double x) { return slope * dl(x) * w.phi(x); }, a + eps, b - eps, 1e-9, 12);
        }
      }
      CHECK(pairing == doctest::Approx(f_at(s)).epsilon(2e-6));
    }
  }
}

TEST_CASE("galerkin oracle brackets the diagonal estimate") {
  for (const SobolevWeight& w : {SobolevWeight::power(1.0), SobolevWeight::power(2.0),
                                 SobolevWeight::sum_of_powers(2.0, 1.0)}) {
    SobolevGalerkin galerkin(w);
    for (int j = 2; j <= 12; ++j) {
      const double a = std::pow(0.5, j);
      const double est = k_diag_estimate(w, a);
      const double oracle = galerkin.kernel_diag(a);
      const double ratio = oracle / est;
      CHECK(ratio >= 0.25);
      CHECK(ratio <= 4.0);
    }
  }
}

TEST_CASE("gamma witness: two-sided value and regularity flags") {
  const SobolevWeight x2 = SobolevWeight::power(2.0);
  {
    const double a = std::pow(0.5, 6);
    const GammaWitness wit = gamma_lower_witness(x2, a);
    const double k = k_diag_estimate(x2, a);
    CHECK(wit.value >= k / 16.0);
    CHECK(wit.value <= 16.0 * k);
    CHECK(wit.decreasing);
    CHECK(wit.convex);
    CHECK(wit.halving_bound);
    CHECK(wit.derivative_growth);
  }
  {
    // flat weight dominating t^2 on (0, 2*pi]
    const SobolevWeight flat = SobolevWeight::constant(40.0);
    const double a = 0.25;
    const GammaWitness wit = gamma_lower_witness(flat, a);
    const double k = k_diag_estimate(flat, a);
    CHECK(k == doctest::Approx(1.0 + (two_pi - a) / 40.0).epsilon(1e-9));
    CHECK(wit.value == doctest::Approx(1.0).epsilon(0.5));
    CHECK(wit.value <= k * (1.0 + 1e-9));
    CHECK(wit.value >= k / 16.0);
  }
  SUBCASE("quad-growth precondition") {
    CHECK_THROWS_AS((void)gamma_lower_witness(SobolevWeight::power(1.0), 0.1), Error);
  }
}
