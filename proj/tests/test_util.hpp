#pragma once

// Shared helpers for the test suites: deterministic random measures and a few
// brute-force oracles kept independent of the library evaluation paths.

#include <cmath>
#include <complex>
#include <memory>
#include <random>
#include <vector>

#include "dmu/measure.hpp"

namespace dmu_test {

using dmu::Arc;
using dmu::Complex;
using dmu::Measure;

/// Random atomic-plus-density measure; deterministic in the seed.
inline Measure random_measure(unsigned seed, bool allow_density = true,
                              bool allow_cantor = false) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(-dmu::pi, dmu::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<dmu::Atom> atoms;
  const int n_atoms = 1 + static_cast<int>(unit(rng) * 6.0);
  for (int i = 0; i < n_atoms; ++i)
    atoms.push_back(dmu::Atom{angle(rng), 0.05 + unit(rng)});
  std::shared_ptr<const dmu::Density> dens;
  if (allow_density && unit(rng) < 0.6)
    dens = std::make_shared<dmu::UniformDensity>(0.1 + unit(rng));
  std::optional<dmu::CantorPart> cantor;
  if (allow_cantor && unit(rng) < 0.3) {
    dmu::CantorPart c;
    c.ratio = 0.2 + 0.25 * unit(rng);
    c.depth = 8;
    c.mass = 0.2 + unit(rng);
    c.base_lo = angle(rng);
    c.base_hi = c.base_lo + 0.5 + unit(rng);
    cantor = c;
  }
  return Measure::from_parts(std::move(atoms), std::move(dens), cantor);
}

/// Brute-force closed-arc mass over materialized point masses only.
inline double arc_mass_points_brute(const Measure& mu, const Arc& arc) {
  double acc = 0.0;
  const auto& th = mu.point_mass_angles();
  const auto& ms = mu.point_mass_values();
  for (std::size_t i = 0; i < th.size(); ++i)
    if (arc.contains(th[i])) acc += ms[i];
  return acc;
}

/// Brute-force Fourier moment over point masses.
inline Complex moment_points_brute(const Measure& mu, long k) {
  Complex acc(0.0, 0.0);
  const auto& th = mu.point_mass_angles();
  const auto& ms = mu.point_mass_values();
  for (std::size_t i = 0; i < th.size(); ++i)
    acc += ms[i] * std::polar(1.0, -static_cast<double>(k) * th[i]);
  return acc;
}

/// Brute-force F_mu over point masses.
inline double f_mu_points_brute(const Measure& mu, double x) {
  double acc = 0.0;
  const auto& th = mu.point_mass_angles();
  const auto& ms = mu.point_mass_values();
  for (std::size_t i = 0; i < th.size(); ++i) {
    const double s = dmu::wrap_angle(th[i]);
    acc += ms[i] * x * x / (x * x + s * s);
  }
  return acc;
}

}  // namespace dmu_test
