#pragma once

// Operations that pair a measure with a closed boundary set: the local
// modulus of continuity rho_{mu,E} and its power-law profile.

#include <algorithm>
#include <cmath>
#include <vector>

#include "dmu/circle.hpp"
#include "dmu/closed_set.hpp"
#include "dmu/errors.hpp"
#include "dmu/fit.hpp"
#include "dmu/measure.hpp"

namespace dmu {

/// rho_{mu,E}(t) = sup over centers in E of the closed-arc mass mu([c-t, c+t]).
/// Candidate centers: gap endpoints, projections of atom-aligned windows onto
/// E, and a grid on E; the best candidate is refined locally within E.
inline double local_modulus(const Measure& mu, const ClosedSet& e, double t) {
  require(t > 0.0 && t <= pi, ErrorKind::PreconditionFailed, "local_modulus needs t in (0, pi]");
  if (mu.is_zero()) return 0.0;
  if (e.is_full_circle()) return mu.modulus_of_continuity(t);

  double best = 0.0;
  double best_c = e.project(0.0);
  auto consider = [&](double c) {
    const double p = e.project(c);
    const double v = mu.arc_mass(Arc{p, t});
    if (v > best) {
      best = v;
      best_c = p;
    }
  };

  for (double p : e.boundary_points(1u << 14)) consider(p);
  const auto& th = mu.point_mass_angles();
  const std::size_t stride = std::max<std::size_t>(1, th.size() / (1u << 12));
  for (std::size_t i = 0; i < th.size(); i += stride) {
    consider(th[i]);
    consider(th[i] - t);
    consider(th[i] + t);
  }
  if (mu.density())
    for (std::size_t i = 0; i < (1u << 12); ++i) consider(-pi + two_pi * (i + 0.5) / (1u << 12));

  double step = t;
  for (int it = 0; it < 30 && step > 1e-13; ++it) {
    const double c0 = best_c;
    for (int s = -3; s <= 3; ++s)
      if (s != 0) consider(c0 + s * step / 3.0);
    step /= 3.0;
  }
  return best;
}

/// Values of rho_{mu,E} on an increasing grid of t, made nondecreasing by a
/// running maximum.
inline std::vector<double> local_modulus_profile(const Measure& mu, const ClosedSet& e,
                                                 const std::vector<double>& ts) {
  std::vector<double> out;
  out.reserve(ts.size());
  double run = 0.0;
  for (double t : ts) {
    run = std::max(run, local_modulus(mu, e, t));
    out.push_back(run);
  }
  return out;
}

/// Power-law fit rho_{mu,E}(t) ~ coeff * t^exponent over t = 2^-j.
inline PowerFit local_modulus_power_fit(const Measure& mu, const ClosedSet& e, int j_min = 3,
                                        int j_max = 14) {
  std::vector<double> xs, ys;
  for (int j = j_min; j <= j_max; ++j) {
    const double t = std::pow(0.5, j);
    xs.push_back(t);
    ys.push_back(local_modulus(mu, e, t));
  }
  return power_law_fit(xs, ys);
}

/// Smallest power-shaped admissible majorant fitted to local-modulus samples.
/// The exponent is clamped below 2 so the majorant stays usable where an
/// alpha < 2 weight is required; enlarging psi only weakens the criterion.
inline AdmissibleWeight fitted_majorant(const Measure& mu, const ClosedSet& e) {
  const PowerFit fit = local_modulus_power_fit(mu, e);
  require(fit.used >= 2, ErrorKind::FitFailed, "not enough positive modulus samples");
  double beta = std::min(std::max(fit.exponent, 0.05), 1.95);
  double c = 0.0;
  for (int j = 0; j <= 20; ++j) {
    const double t = pi * std::pow(0.5, j);
    c = std::max(c, local_modulus(mu, e, t) / std::pow(t, beta));
  }
  require(c > 0.0, ErrorKind::FitFailed, "modulus vanishes on the sample grid");
  return AdmissibleWeight::power(1.05 * c, beta);
}

}  // namespace dmu
