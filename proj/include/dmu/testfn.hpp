#pragma once

// Extremal test functions: outer functions with prescribed boundary modulus,
// local boundary Dirichlet integrals, the area-form energy, harmonic measure
// of arcs, and the norm-bound checks for radially symmetric and
// distance-to-set profiles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "dmu/boundary_set.hpp"
#include "dmu/circle.hpp"
#include "dmu/closed_set.hpp"
#include "dmu/dirichlet_form.hpp"
#include "dmu/divergence.hpp"
#include "dmu/errors.hpp"
#include "dmu/measure.hpp"
#include "dmu/quadrature.hpp"
#include "dmu/sobolev.hpp"

namespace dmu {

// ---------------------------------------------------------------------------
// Regular weights: C1 decreasing convex profiles with doubling control
// ---------------------------------------------------------------------------

struct RegularWeight {
  std::function<double(double)> w;   // on [0, pi], positive
  std::function<double(double)> dw;  // derivative
  std::string label;
  bool doubling = true;          // w(x) <= 2 w(2x)
  bool derivative_growth = true; // x^2 |w'(x)| nondecreasing

  static RegularWeight power_floor(double delta, double beta) {
    require(delta > 0.0 && beta > 0.0, ErrorKind::InvalidWeight, "need delta, beta > 0");
    RegularWeight r;
    r.w = [delta, beta](double t) { return std::pow(delta + t, -beta); };
    r.dw = [delta, beta](double t) { return -beta * std::pow(delta + t, -beta - 1.0); };
    r.label = "(d+t)^-" + std::to_string(beta) + ",d=" + std::to_string(delta);
    r.refresh_flags();
    return r;
  }

  static RegularWeight log_floor(double delta) {
    require(delta > 0.0, ErrorKind::InvalidWeight, "need delta > 0");
    RegularWeight r;
    r.w = [delta](double t) { return 1.0 / (1.0 + std::log1p(t / delta)); };
    r.dw = [delta](double t) {
      const double g = 1.0 + std::log1p(t / delta);
      return -1.0 / ((delta + t) * g * g);
    };
    r.label = "1/(1+log(1+t/d)),d=" + std::to_string(delta);
    r.refresh_flags();
    return r;
  }

  static RegularWeight constant(double c) {
    require(c > 0.0, ErrorKind::InvalidWeight, "need c > 0");
    RegularWeight r;
    r.w = [c](double) { return c; };
    r.dw = [](double) { return 0.0; };
    r.label = "const";
    r.refresh_flags();
    return r;
  }

  /// Kernel-profile weight w(t) = 1 + int_{stretch(t)}^{2*pi} ds/phi(s),
  /// the extremal shape attached to a Sobolev weight at scale a.
  static RegularWeight kernel_profile(std::shared_ptr<const SobolevWeight> phi, double a) {
    require(a > 0.0 && a < 0.5, ErrorKind::InvalidWeight, "profile needs a in (0, 1/2)");
    RegularWeight r;
    const double slope = two_pi / (two_pi + a);
    r.w = [phi, slope, a](double t) {
      const double lo = std::min(slope * (t + a), two_pi);
      return 1.0 + (lo >= two_pi ? 0.0 : l_kernel(*phi, lo, lo));
    };
    r.dw = [phi, slope, a](double t) {
      const double lo = std::min(slope * (t + a), two_pi);
      return -slope / phi->phi(lo);
    };
    r.label = "kernel_profile(a=" + std::to_string(a) + ")";
    r.refresh_flags();
    return r;
  }

  void refresh_flags() {
    doubling = true;
    derivative_growth = true;
    for (int j = 0; j <= 30; ++j) {
      const double x = 0.5 * pi * std::pow(0.5, j);
      if (w(x) > 2.0 * w(2.0 * x) * (1.0 + 1e-9)) doubling = false;
      const double x2 = 0.5 * x;
      if (x2 * x2 * std::abs(dw(x2)) > x * x * std::abs(dw(x)) * (1.0 + 1e-9))
        derivative_growth = false;
    }
  }

  /// Positivity, monotone decrease, convexity on a dyadic grid.
  void validate() const {
    require(static_cast<bool>(w) && static_cast<bool>(dw), ErrorKind::InvalidWeight,
            "weight is empty");
    double prev = -1.0;
    for (int j = 40; j >= 0; --j) {
      const double t = pi * std::pow(0.5, j);
      const double v = w(t);
      require(v > 0.0 && std::isfinite(v), ErrorKind::InvalidWeight, "weight must be positive");
      if (prev >= 0.0)
        require(v <= prev * (1.0 + 1e-9), ErrorKind::InvalidWeight, "weight must be decreasing");
      require(dw(t) <= 1e-12, ErrorKind::InvalidWeight, "derivative must be nonpositive");
      prev = v;
    }
    for (int j = 0; j <= 24; ++j) {
      const double a = pi * std::pow(0.5, j + 1), b = pi * std::pow(0.5, j);
      const double mid = w(0.5 * (a + b)), chord = 0.5 * (w(a) + w(b));
      require(mid <= chord + 1e-9 * std::max(1.0, chord), ErrorKind::InvalidWeight,
              "weight must be convex");
    }
  }
};

// ---------------------------------------------------------------------------
// Outer functions
// ---------------------------------------------------------------------------

/// Even boundary modulus w(|t|) on (-pi, pi]; not necessarily monotone.
struct BoundaryModulus {
  std::function<double(double)> w;   // on (0, pi]
  std::function<double(double)> dw;  // one-sided derivative where defined
  std::string label;

  static BoundaryModulus from_regular(const RegularWeight& r) {
    return BoundaryModulus{r.w, r.dw, r.label};
  }
  /// c * (t/pi)^p, vanishing at 0 with integrable logarithm.
  static BoundaryModulus power_vanish(double c, double p) {
    require(c > 0.0 && p > 0.0, ErrorKind::InvalidWeight, "need c, p > 0");
    return BoundaryModulus{[c, p](double t) { return c * std::pow(t / pi, p); },
                           [c, p](double t) { return c * p / pi * std::pow(t / pi, p - 1.0); },
                           "c*(t/pi)^p"};
  }
  /// |1 - e^{it}| = 2 |sin(t/2)|; the outer function with this modulus is 1-z.
  static BoundaryModulus sin_half() {
    return BoundaryModulus{[](double t) { return 2.0 * std::abs(std::sin(0.5 * t)); },
                           [](double t) { return std::cos(0.5 * t) * (t >= 0 ? 1.0 : -1.0); },
                           "|1-e^{it}|"};
  }
};

class OuterFunction {
 public:
  static constexpr double eval_guard = 1.0 - 0x1p-30;

  explicit OuterFunction(BoundaryModulus modulus) : m_(std::move(modulus)) {
    require(static_cast<bool>(m_.w), ErrorKind::InvalidWeight, "boundary modulus is empty");
    // log-integrability: dyadic truncations of int |log w| must level off
    std::vector<double> trace;
    double acc = 0.0;
    for (int j = 1; j <= 44; ++j) {
      const double hi = pi * std::pow(0.5, j - 1), lo = pi * std::pow(0.5, j);
      const double v = m_.w(0.5 * (lo + hi));
      require(v > 0.0, ErrorKind::NonIntegrableLog, "modulus must be positive a.e.");
      acc += integrate_gl([this](double t) { return std::abs(std::log(m_.w(t))); }, lo, hi, 8);
      trace.push_back(acc);
    }
    const auto cls = DivergenceDetector{}.classify(trace);
    require(cls.trend != Trend::divergent, ErrorKind::NonIntegrableLog,
            "log of the boundary modulus is not integrable");
  }

  const BoundaryModulus& modulus() const { return m_; }
  double boundary_value(double t) const { return m_.w(std::abs(wrap_angle(t))); }

  Complex eval(Complex z) const { return eval_with_derivative(z).first; }

  /// f(z) = exp H(z) and f'(z) = f(z) H'(z) with
  /// H(z) = (1/2*pi) int (e^{it}+z)/(e^{it}-z) log w(|t|) dt.
  std::pair<Complex, Complex> eval_with_derivative(Complex z) const {
    const double r = std::abs(z);
    require(r <= eval_guard, ErrorKind::BoundaryTooClose,
            "outer evaluation too close to the boundary");
    const double alpha = (r == 0.0) ? 0.0 : std::arg(z);
    // panels on [alpha - pi, alpha + pi] refined toward the kernel peak at
    // alpha and toward the modulus singularity at t = 0 (mod 2*pi)
    std::vector<double> cuts{alpha - pi, alpha + pi};
    const double t0 = alpha + std::remainder(-alpha, two_pi);  // rep of 0 near alpha
    for (double wdt = pi; wdt > 1e-17; wdt *= 0.5) {
      for (double c : {t0 - wdt, t0 + wdt, alpha - wdt, alpha + wdt})
        if (c > alpha - pi && c < alpha + pi) cuts.push_back(c);
      if (wdt < 0x1p-6 * (1.0 - r) && wdt < 1e-8) break;
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return b - a < 1e-18; }),
               cuts.end());
    const GaussRule& rule = gauss_rule(8);
    Complex h(0.0, 0.0), dh(0.0, 0.0);
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
      const double rad = 0.5 * (cuts[p + 1] - cuts[p]);
      if (rad <= 0.0) continue;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = mid + rad * rule.nodes[i];
        const double lw = std::log(boundary_value(t));
        const Complex e = std::polar(1.0, t);
        const Complex d = e - z;
        h += rule.weights[i] * rad * lw * ((e + z) / d);
        dh += rule.weights[i] * rad * lw * (2.0 * e / (d * d));
      }
    }
    h /= two_pi;
    dh /= two_pi;
    const Complex f = std::exp(h);
    return {f, f * dh};
  }

 private:
  BoundaryModulus m_;
};

// ---------------------------------------------------------------------------
// Local boundary Dirichlet integral
// ---------------------------------------------------------------------------

/// Local integral at the boundary point e^{is}:
///   (1/2*pi) int (|f(t)|^2 - |f(s)|^2 - 2 |f(s)|^2 log |f(t)/f(s)|)
///                / |e^{it} - e^{is}|^2 dt,
/// with boundary values |f| = w(|t|); finite for outer functions. The
/// integrand has a removable singularity at t = s handled by a local
/// expansion of the bracket.
inline double local_dirichlet_boundary(const OuterFunction& f, double zeta_angle) {
  const double s = wrap_angle(zeta_angle);
  const double ws = f.boundary_value(s);
  require(std::isfinite(ws), ErrorKind::UndefinedBoundaryValue, "no boundary value");

  auto raw = [&f, s, ws](double t) {
    const double wt = f.boundary_value(t);
    const double den = 2.0 * std::sin(0.5 * (t - s));
    if (ws <= 0.0) return wt * wt / (den * den);
    const double v = std::log(wt / ws);
    double bracket;
    if (std::abs(v) < 1e-7) {
      bracket = ws * ws * (2.0 * v * v * (1.0 + 2.0 / 3.0 * v));
    } else {
      bracket = ws * ws * (std::expm1(2.0 * v) - 2.0 * v);
    }
    return bracket / (den * den);
  };
  // near t = s the integrand tends to ws^2 phi'(s)^2 with phi = log w; the
  // quadrature never lands exactly on s since s is a cut point
  std::vector<double> toward;
  toward.push_back(s);
  const double z0 = s + std::remainder(-s, two_pi);
  toward.push_back(z0);
  if (std::abs(z0 - (s - pi)) < 1e-14 || std::abs(z0 - (s + pi)) < 1e-14) {
    toward.push_back(s - pi);
    toward.push_back(s + pi);
  }
  return integrate_refined(raw, s - pi, s + pi, toward, 1e-10, 1e-9) / two_pi;
}

// ---------------------------------------------------------------------------
// Energies: area route and boundary route
// ---------------------------------------------------------------------------

struct EnergyResult {
  double value = 0.0;
  bool converged = true;
  double tail_estimate = 0.0;
  int levels = 0;
};

/// Exact energy of a polynomial sum c_n z^n through the moment pairing
/// <z^n, z^m> -> min(m, n) moment(m - n).
inline double dirichlet_energy_polynomial(const Measure& mu, const std::vector<Complex>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  Complex acc(0.0, 0.0);
  for (int m = 1; m <= n; ++m) {
    for (int k = 1; k <= n; ++k) {
      const int lo = std::min(m, k);
      const Complex mom = mu.fourier_moment(m - k, std::max<long>(n, Measure::default_max_order));
      acc += std::conj(coeffs[m]) * coeffs[k] * static_cast<double>(lo) * mom;
    }
  }
  return acc.real();
}

/// Area form int_D |f'|^2 P[mu] dA over dyadic radial shells with geometric
/// tail extrapolation. `singular_dirs` lists boundary angles where the
/// integrand concentrates (atom directions, modulus kinks).
template <class DerivFn>
EnergyResult dirichlet_energy_area_generic(const Measure& mu, const DerivFn& deriv_sq,
                                           std::vector<double> singular_dirs, int max_levels = 22,
                                           double rel_tol = 2e-4) {
  EnergyResult out;
  if (mu.is_zero()) return out;
  for (const Atom& a : mu.atoms()) singular_dirs.push_back(a.theta);
  if (mu.density())
    for (double t : mu.density()->split_angles()) singular_dirs.push_back(t);
  if (mu.cantor()) {
    singular_dirs.push_back(wrap_angle(mu.cantor()->base_lo));
    singular_dirs.push_back(wrap_angle(mu.cantor()->base_hi));
  }

  auto angular = [&](double rho) {
    auto g = [&](double alpha) {
      return deriv_sq(std::polar(rho, alpha)) * mu.poisson_unguarded(std::polar(rho, alpha));
    };
    return integrate_refined(g, -pi, pi, singular_dirs, 1e-9,
                             std::max((1.0 - rho) / 16.0, 1e-14));
  };

  double total = 0.0;
  std::vector<double> levels;
  const GaussRule& rule = gauss_rule(4);
  for (int j = 0; j < max_levels; ++j) {
    const double rho_lo = 1.0 - std::pow(0.5, j);
    const double rho_hi = 1.0 - std::pow(0.5, j + 1);
    double level = 0.0;
    const double mid = 0.5 * (rho_lo + rho_hi), rad = 0.5 * (rho_hi - rho_lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = mid + rad * rule.nodes[i];
      level += rule.weights[i] * rad * angular(rho) * rho;
    }
    level /= pi;
    total += level;
    levels.push_back(std::abs(level));
    out.levels = j + 1;
    if (j >= 4) {
      const double q = levels[j] / std::max(levels[j - 1], 1e-300);
      if (levels[j] <= rel_tol * std::max(std::abs(total), 1e-300) && q < 0.95) {
        out.tail_estimate = levels[j] * q / std::max(1.0 - q, 0.05);
        total += out.tail_estimate;
        out.value = total;
        return out;
      }
    }
  }
  // did not level off inside the budget: extrapolate and flag
  const double q =
      levels.back() / std::max(levels[levels.size() - 2], 1e-300);
  out.tail_estimate = (q < 1.0) ? levels.back() * q / (1.0 - q) : levels.back();
  out.converged = false;
  out.value = total + out.tail_estimate;
  return out;
}

inline EnergyResult dirichlet_energy_area(const Measure& mu, const OuterFunction& f,
                                          int max_levels = 22) {
  auto deriv_sq = [&f](Complex z) { return std::norm(f.eval_with_derivative(z).second); };
  return dirichlet_energy_area_generic(mu, deriv_sq, {0.0}, max_levels);
}

/// Boundary route: int D_zeta(f) dmu(zeta), local integrals integrated
/// against the measure (atoms directly, big atom clouds by clustering,
/// densities by refined quadrature).
inline double dirichlet_energy_boundary(const Measure& mu, const OuterFunction& f) {
  if (mu.is_zero()) return 0.0;
  auto local = [&f](double s) { return local_dirichlet_boundary(f, s); };
  double acc = mu.cluster_sum(local, 0.0, 1e-3, 0x1p-5);
  if (mu.density()) {
    if (mu.density()->kind() == DensityKind::uniform) {
      const double scale = mu.density()->total() / two_pi;
      acc += scale * integrate_refined(local, -pi, pi, {0.0}, 1e-8, 1e-10);
    } else {
      std::vector<double> toward = mu.density()->split_angles();
      toward.push_back(0.0);
      auto g = [&](double s) { return local(s) * mu.density()->value(s); };
      acc += integrate_refined(g, -pi, pi, toward, 1e-8, 1e-10);
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Harmonic measure
// ---------------------------------------------------------------------------

/// Harmonic measure of a boundary arc seen from the point r on (0,1),
/// by the closed-form primitive of the Poisson kernel.
inline double harmonic_measure_arc(double r, const Arc& arc) {
  require(r >= 0.0 && r < 1.0, ErrorKind::PreconditionFailed, "need 0 <= r < 1");
  if (arc.is_full_circle()) return 1.0;
  const double c = (1.0 + r) / (1.0 - r);
  auto prim = [c](double theta) {  // increasing from -1/2 to 1/2 on [-pi, pi]
    if (theta <= -pi) return -0.5;
    if (theta >= pi) return 0.5;
    return std::atan(c * std::tan(0.5 * theta)) / pi;
  };
  double lo = wrap_angle(arc.lo());
  double hi = lo + arc.length();
  if (hi <= pi) return prim(hi) - prim(lo);
  return (0.5 - prim(lo)) + (prim(hi - two_pi) + 0.5);
}

/// Weighted sum over the dyadic arc decomposition away from the point 1:
/// intervals [a_k, a_{k+1}], a_0 = 0, a_k = 2^k (1-r), each weighted k+1.
inline double dyadic_harmonic_sum(double r) {
  require(r > 0.5 && r < 1.0, ErrorKind::PreconditionFailed, "need r in (1/2, 1)");
  const double a = 1.0 - r;
  double sum = 0.0;
  int k = 0;
  double lo = 0.0;
  double hi = a;
  while (2.0 * hi <= pi + 1e-15) {
    sum += (k + 1) * harmonic_measure_arc(r, Arc::from_endpoints(lo, hi));
    lo = hi;
    hi *= 2.0;
    ++k;
    if (k == 1) hi = 2.0 * a;  // a_1 = 2a
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Norm-bound checks
// ---------------------------------------------------------------------------

struct BoundCheckReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool converged = true;
  std::string route;
};

/// lhs = area-form energy of the outer function with modulus w(|t|);
/// rhs = sup |F_mu w'| * sup w on a dyadic grid.
inline BoundCheckReport analytic_norm_bound_check(const Measure& mu, const RegularWeight& w) {
  w.validate();
  BoundCheckReport rep;
  rep.route = "radial_profile";
  const OuterFunction f(BoundaryModulus::from_regular(w));
  const EnergyResult lhs = dirichlet_energy_area(mu, f);
  rep.lhs = lhs.value;
  rep.converged = lhs.converged;
  double sup_fw = 0.0, sup_w = 0.0;
  const int grid = 1 << 14;
  for (int i = 0; i <= grid; ++i) {
    const double x = pi * std::pow(2.0, -26.0 * (1.0 - static_cast<double>(i) / grid));
    sup_fw = std::max(sup_fw, mu.f_mu(x) * std::abs(w.dw(x)));
    sup_w = std::max(sup_w, w.w(x));
  }
  rep.rhs = sup_fw * sup_w;
  rep.ratio = (rep.rhs > 0.0) ? rep.lhs / rep.rhs : (rep.lhs == 0.0 ? 0.0 : HUGE_VAL);
  return rep;
}

/// lhs = grid double-integral energy of the distance profile w(d(., E));
/// rhs = sup |w' M_{psi,E}| * sup w (alpha < 2) or the log-corrected variant
/// at alpha = 2.
inline BoundCheckReport distance_norm_bound_check(const Measure& mu, const ClosedSet& e,
                                                  const RegularWeight& w,
                                                  const AdmissibleWeight& psi,
                                                  std::size_t grid_n = (1u << 12)) {
  w.validate();
  psi.validate();
  require(psi.alpha <= 2.0, ErrorKind::AdmissibilityFailed, "need alpha <= 2");
  for (int j = 0; j <= 16; ++j) {
    const double t = pi * std::pow(0.5, j);
    const double rho = local_modulus(mu, e, t);
    require(rho <= psi.psi(t) * (1.0 + 1e-9) + 1e-12, ErrorKind::MajorantViolated,
            "psi fails to dominate the local modulus at t=" + std::to_string(t));
  }
  BoundCheckReport rep;
  rep.route = (psi.alpha < 2.0) ? "distance_profile" : "distance_profile_log";

  auto sample_energy = [&](std::size_t n) {
    DirichletFormGrid form(mu, n);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = w.w(std::min(e.distance(form.node_angle(i)), pi));
    return form.dirichlet(u);
  };
  const double coarse = sample_energy(grid_n / 2);
  rep.lhs = sample_energy(grid_n);
  rep.converged = std::abs(rep.lhs - coarse) <= 0.25 * std::max(std::abs(rep.lhs), 1e-12);

  MPsiEvaluator m_eval(e, psi);
  double sup_wm = 0.0, sup_w = 0.0;
  const int grid = 1 << 12;
  for (int i = 0; i <= grid; ++i) {
    const double t = pi * std::pow(2.0, -20.0 * (1.0 - static_cast<double>(i) / grid));
    sup_w = std::max(sup_w, w.w(t));
    const double factor = (psi.alpha < 2.0)
                              ? m_eval(t)
                              : std::abs(std::log(t)) * e.thickened_length(std::min(t, pi));
    sup_wm = std::max(sup_wm, std::abs(w.dw(t)) * factor);
  }
  rep.rhs = sup_wm * sup_w;
  rep.ratio = (rep.rhs > 0.0) ? rep.lhs / rep.rhs : (rep.lhs == 0.0 ? 0.0 : HUGE_VAL);
  return rep;
}

}  // namespace dmu
