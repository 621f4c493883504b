#pragma once

// Weighted Sobolev spaces on (0, 2*pi]: the exact kernel of the
// zero-boundary space, the diagonal estimate 1 + L(a,a) for the full space,
// a piecewise-linear Galerkin oracle, and the extremal witness construction.

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dmu/circle.hpp"
#include "dmu/divergence.hpp"
#include "dmu/errors.hpp"
#include "dmu/measure.hpp"
#include "dmu/quadrature.hpp"

namespace dmu {

/// Nondecreasing continuous positive weight on (0, 2*pi].
struct SobolevWeight {
  std::function<double(double)> phi;
  std::string label;

  static SobolevWeight power(double p) {
    require(p >= 0.0, ErrorKind::InvalidWeight, "power weight needs p >= 0");
    SobolevWeight w;
    w.phi = [p](double x) { return std::pow(x, p); };
    w.label = "x^" + std::to_string(p);
    return w;
  }

  /// x^p * (1/p + log(2*pi/x)); nondecreasing on (0, 2*pi] for p > 0.
  static SobolevWeight power_log(double p) {
    require(p > 0.0, ErrorKind::InvalidWeight, "log-corrected power needs p > 0");
    SobolevWeight w;
    w.phi = [p](double x) { return std::pow(x, p) * (1.0 / p + std::log(two_pi / x)); };
    w.label = "x^" + std::to_string(p) + "*log";
    return w;
  }

  static SobolevWeight constant(double c) {
    require(c > 0.0, ErrorKind::InvalidWeight, "constant weight must be positive");
    SobolevWeight w;
    w.phi = [c](double) { return c; };
    w.label = "const";
    return w;
  }

  static SobolevWeight sum_of_powers(double p1, double p2) {
    SobolevWeight w;
    w.phi = [p1, p2](double x) { return std::pow(x, p1) + std::pow(x, p2); };
    w.label = "x^" + std::to_string(p1) + "+x^" + std::to_string(p2);
    return w;
  }

  /// phi(x) = F_mu(x) + x^2, the radial weight attached to a measure.
  static SobolevWeight f_mu_plus_x2(std::shared_ptr<const Measure> mu) {
    SobolevWeight w;
    w.phi = [mu](double x) {
      const double xc = std::min(x, pi);  // F_mu is constant in the kernel sense past pi
      return mu->f_mu(xc) + x * x;
    };
    w.label = "F_mu+x^2";
    return w;
  }

  void validate() const {
    require(static_cast<bool>(phi), ErrorKind::InvalidWeight, "weight is empty");
    double prev = 0.0;
    bool first = true;
    for (int j = 40; j >= 0; --j) {
      const double x = two_pi * std::pow(0.5, j);
      const double v = phi(x);
      require(v > 0.0 && std::isfinite(v), ErrorKind::InvalidWeight,
              "weight must be positive and finite on (0, 2*pi]");
      if (!first)
        require(v >= prev * (1.0 - 1e-9), ErrorKind::InvalidWeight,
                "weight must be nondecreasing");
      prev = v;
      first = false;
    }
  }

  /// phi(t) >= t^2 with t^2/phi(t) nondecreasing, sampled on a dyadic grid.
  bool quad_growth() const {
    double prev_ratio = 0.0;
    bool first = true;
    for (int j = 40; j >= 0; --j) {
      const double t = two_pi * std::pow(0.5, j);
      const double v = phi(t);
      if (v < t * t * (1.0 - 1e-9)) return false;
      const double r = t * t / v;
      if (!first && r < prev_ratio * (1.0 - 1e-9)) return false;
      prev_ratio = r;
      first = false;
    }
    return true;
  }

  /// Trend of int_eps^{2*pi} dx/phi as eps -> 0 (bounded point evaluation at 0
  /// exists iff this converges).
  TraceClassification reciprocal_integrability() const;
};

/// L(t,s) = int_{max(t,s)}^{2*pi} dx/phi(x), the kernel of the zero-boundary
/// space; depends on max(t,s) only.
inline double l_kernel(const SobolevWeight& w, double t, double s) {
  require(t > 0.0 && t <= two_pi && s > 0.0 && s <= two_pi, ErrorKind::PreconditionFailed,
          "l_kernel needs t, s in (0, 2*pi]");
  const double a = std::max(t, s);
  if (a >= two_pi) return 0.0;
  auto f = [&w](double x) { return 1.0 / w.phi(x); };
  // dyadic panels away from the lower endpoint; 1/phi varies on scale x
  double total = 0.0;
  double lo = a;
  while (lo < two_pi) {
    const double hi = std::min(2.0 * lo, two_pi);
    total += integrate_adaptive(f, lo, hi, 1e-12 * std::max(1.0, total), 12);
    lo = hi;
  }
  return total;
}

/// Diagonal estimate 1 + L(a,a) for the kernel of the full weighted space.
inline double k_diag_estimate(const SobolevWeight& w, double a) {
  require(a > 0.0 && a <= two_pi, ErrorKind::PreconditionFailed,
          "k_diag_estimate needs a in (0, 2*pi]");
  return 1.0 + l_kernel(w, a, a);
}

inline TraceClassification SobolevWeight::reciprocal_integrability() const {
  std::vector<double> trace;
  for (int j = 2; j <= 40; ++j) trace.push_back(l_kernel(*this, two_pi * std::pow(0.5, j), two_pi * std::pow(0.5, j)));
  return DivergenceDetector{}.classify(trace);
}

// ---------------------------------------------------------------------------
// Piecewise-linear Galerkin oracle on a geometric mesh accumulating at 0.
// The discrete kernel is the quadratic-form inverse applied to the
// evaluation functional; it lower-bounds the true kernel and is comparable
// to it once the mesh resolves the scale of the evaluation point.
// ---------------------------------------------------------------------------

class SobolevGalerkin {
 public:
  explicit SobolevGalerkin(const SobolevWeight& w, std::size_t nodes = (1u << 14),
                           double x_min = two_pi * 0x1p-26)
      : weight_(w) {
    w.validate();
    const std::size_t n = nodes;
    x_.resize(n + 1);
    const double q = std::log(two_pi / x_min) / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i)
      x_[i] = x_min * std::exp(q * static_cast<double>(i));
    x_.back() = two_pi;

    // assemble SPD tridiagonal: stiffness int phi (f')^2 + mass int f^2
    diag_.assign(n + 1, 0.0);
    off_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double h = x_[i + 1] - x_[i];
      const double phi_int =
          integrate_gl([&](double t) { return w.phi(t); }, x_[i], x_[i + 1], 8);
      const double s = phi_int / (h * h);
      diag_[i] += s + h / 3.0;
      diag_[i + 1] += s + h / 3.0;
      off_[i] += -s + h / 6.0;
    }
    diag_[0] += x_[0];  // constant continuation on (0, x_min]

    // LDL^T factorization of the tridiagonal
    fd_.assign(n + 1, 0.0);
    fl_.assign(n, 0.0);
    fd_[0] = diag_[0];
    for (std::size_t i = 1; i <= n; ++i) {
      fl_[i - 1] = off_[i - 1] / fd_[i - 1];
      fd_[i] = diag_[i] - fl_[i - 1] * off_[i - 1];
      require(fd_[i] > 0.0, ErrorKind::IllConditioned, "Galerkin form lost positivity");
    }
  }

  /// Discrete reproducing kernel at (a, a).
  double kernel_diag(double a) const {
    require(a >= x_.front() && a <= two_pi, ErrorKind::PreconditionFailed,
            "evaluation point below the mesh resolution");
    const std::size_t n = x_.size() - 1;
    auto it = std::upper_bound(x_.begin(), x_.end(), a);
    std::size_t seg = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin() - 1, 0), n - 1);
    const double h = x_[seg + 1] - x_[seg];
    const double t = (a - x_[seg]) / h;
    std::vector<double> rhs(n + 1, 0.0);
    rhs[seg] = 1.0 - t;
    rhs[seg + 1] = t;
    // forward/backward LDL^T solve
    for (std::size_t i = 1; i <= n; ++i) rhs[i] -= fl_[i - 1] * rhs[i - 1];
    for (std::size_t i = 0; i <= n; ++i) rhs[i] /= fd_[i];
    for (std::size_t i = n; i-- > 0;) rhs[i] -= fl_[i] * rhs[i + 1];
    return rhs[seg] * (1.0 - t) + rhs[seg + 1] * t;
  }

  const std::vector<double>& mesh() const { return x_; }

 private:
  SobolevWeight weight_;
  std::vector<double> x_;
  std::vector<double> diag_, off_;
  std::vector<double> fd_, fl_;
};

// ---------------------------------------------------------------------------
// Extremal witness
// ---------------------------------------------------------------------------

/// Witness f = 1 + f0 with f0(x) = int_{2*pi*(x+a)/(2*pi+a)}^{2*pi} ds/phi(s),
/// together with its Rayleigh-type value and regularity flags.
struct GammaWitness {
  std::function<double(double)> f;        // on (0, 2*pi]
  std::function<double(double)> f_prime;  // derivative
  double value = 0.0;                     // f(a)^2 / (|f' phi|_inf |f|_inf + |f|_2^2)
  double sup_norm = 0.0;
  double grad_weighted_sup = 0.0;
  double l2_norm_sq = 0.0;
  bool decreasing = true;
  bool convex = true;
  bool halving_bound = true;        // f(2t) <= 2 f(t)
  bool derivative_growth = true;    // t^2 |f'(t)| nondecreasing
  bool doubling_bound = true;       // f(x) <= 2 f(2x)
};

inline GammaWitness gamma_lower_witness(const SobolevWeight& w, double a) {
  require(a > 0.0 && a < 0.5, ErrorKind::PreconditionFailed, "witness needs a in (0, 1/2)");
  require(w.quad_growth(), ErrorKind::PreconditionFailed,
          "weight must dominate t^2 with t^2/phi(t) nondecreasing");

  const double slope = two_pi / (two_pi + a);
  auto stretch = [a, slope](double x) { return slope * (x + a); };
  auto f0 = [&w, stretch](double x) {
    const double lo = stretch(x);
    return (lo >= two_pi) ? 0.0 : l_kernel(w, lo, lo);
  };
  GammaWitness out;
  out.f = [f0](double x) { return 1.0 + f0(x); };
  out.f_prime = [&w, stretch, slope](double x) {
    const double lo = std::min(stretch(x), two_pi);
    return -slope / w.phi(lo);
  };

  // grid suprema on dyadic points accumulating at 0
  const int grid = 1 << 14;
  double sup_f = out.f(two_pi);
  double sup_g = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double x = two_pi * std::pow(2.0, -26.0 * (1.0 - static_cast<double>(i) / grid));
    sup_f = std::max(sup_f, out.f(x));
    sup_g = std::max(sup_g, std::abs(out.f_prime(x)) * w.phi(x));
  }
  out.sup_norm = sup_f;
  out.grad_weighted_sup = sup_g;

  // |f|_2^2 with dyadic refinement toward 0 (f is bounded, so this converges)
  double l2 = 0.0;
  double hi = two_pi;
  for (int j = 0; j < 48 && hi > 1e-15; ++j) {
    const double lo = 0.5 * hi;
    l2 += integrate_adaptive([&](double x) { return out.f(x) * out.f(x); }, lo, hi, 1e-12, 8);
    hi = lo;
  }
  l2 += hi * out.f(hi) * out.f(hi);  // constant continuation on the last sliver
  out.l2_norm_sq = l2;

  const double fa = out.f(a);
  out.value = fa * fa / (sup_g * sup_f + l2);

  // regularity flags on a dyadic grid
  double prev = out.f(two_pi);
  for (int j = 0; j <= 26; ++j) {
    const double t = two_pi * std::pow(0.5, j);
    const double ft = out.f(t);
    if (ft < prev * (1.0 - 1e-9)) out.decreasing = false;
    prev = ft;
    if (t <= pi) {
      if (out.f(2.0 * t) > 2.0 * ft + 1e-12) out.halving_bound = false;
      if (ft > 2.0 * out.f(2.0 * t) + 1e-12) out.doubling_bound = false;
      const double mid = out.f(1.5 * t);
      if (mid > 0.5 * (ft + out.f(2.0 * t)) + 1e-9 * std::max(1.0, ft)) out.convex = false;
    }
    if (j < 26) {
      const double t2 = two_pi * std::pow(0.5, j + 1);
      if (t2 * t2 * std::abs(out.f_prime(t2)) >
          t * t * std::abs(out.f_prime(t)) * (1.0 + 1e-9))
        out.derivative_growth = false;
    }
  }
  return out;
}

}  // namespace dmu
