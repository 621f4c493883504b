#pragma once

// Finite positive measures on the unit circle: point masses, an absolutely
// continuous part given by an evaluable density, and an optional Cantor-type
// singular part materialized as equal point masses at generation-depth cell
// centers. All evaluations are pure; instances are immutable once built.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dmu/circle.hpp"
#include "dmu/closed_set.hpp"
#include "dmu/errors.hpp"
#include "dmu/quadrature.hpp"

namespace dmu {

struct Atom {
  double theta = 0.0;  // in (-pi, pi]
  double mass = 0.0;   // > 0
};

struct CantorPart {
  double ratio = 1.0 / 3.0;  // child-cell fraction, in (0, 1/2)
  int depth = 20;
  double mass = 1.0;
  double base_lo = -1.0;
  double base_hi = 1.0;
};

enum class DensityKind { uniform, samples, power_gap };

/// Absolutely continuous part, d(mu_ac) = value(theta) d(theta).
/// Arc integrals are exact (closed forms per kind), so arc masses carry no
/// quadrature error.
class Density {
 public:
  virtual ~Density() = default;
  virtual DensityKind kind() const = 0;
  virtual double value(double theta) const = 0;
  virtual double arc_integral(double lo, double hi) const = 0;  // 0 <= hi-lo <= 2*pi
  virtual double total() const { return arc_integral(-pi, pi); }
  /// Angles where the density is singular or kinked (quadrature split hints).
  virtual std::vector<double> split_angles() const { return {}; }
};

class UniformDensity final : public Density {
 public:
  explicit UniformDensity(double mass) : mass_(mass) {
    require(mass > 0.0, ErrorKind::InvariantViolation, "uniform density mass must be positive");
  }
  DensityKind kind() const override { return DensityKind::uniform; }
  double value(double) const override { return mass_ / two_pi; }
  double arc_integral(double lo, double hi) const override {
    return std::clamp(hi - lo, 0.0, two_pi) * mass_ / two_pi;
  }
  double total() const override { return mass_; }
  double mass() const { return mass_; }

 private:
  double mass_;
};

/// Piecewise-linear periodic density from samples on the uniform grid
/// theta_i = -pi + 2*pi*i/m.
class SampleDensity final : public Density {
 public:
  explicit SampleDensity(std::vector<double> values) : v_(std::move(values)) {
    require(v_.size() >= 2, ErrorKind::InvariantViolation, "need at least 2 samples");
    for (double x : v_)
      require(x >= 0.0 && std::isfinite(x), ErrorKind::InvariantViolation,
              "density samples must be finite and nonnegative");
    h_ = two_pi / static_cast<double>(v_.size());
    prefix_.assign(v_.size() + 1, 0.0);
    for (std::size_t i = 0; i < v_.size(); ++i)
      prefix_[i + 1] = prefix_[i] + 0.5 * (v_[i] + v_[(i + 1) % v_.size()]) * h_;
  }
  DensityKind kind() const override { return DensityKind::samples; }
  const std::vector<double>& samples() const { return v_; }

  double value(double theta) const override {
    const double x = (wrap_angle(theta) + pi) / h_;
    const std::size_t m = v_.size();
    double fi = std::floor(x);
    std::size_t i = static_cast<std::size_t>(fi) % m;
    double frac = x - fi;
    return v_[i] * (1.0 - frac) + v_[(i + 1) % m] * frac;
  }

  double arc_integral(double lo, double hi) const override {
    if (!(hi > lo)) return 0.0;
    if (hi - lo >= two_pi) return prefix_.back();
    return cumulative(hi) - cumulative(lo);
  }
  double total() const override { return prefix_.back(); }

 private:
  // integral from -pi to x (x unwrapped; periodic extension)
  double cumulative(double x) const {
    double full = std::floor((x + pi) / two_pi);
    double rem = (x + pi) - full * two_pi;  // in [0, 2*pi)
    const double t = rem / h_;
    const std::size_t m = v_.size();
    double fi = std::floor(t);
    std::size_t i = static_cast<std::size_t>(fi) % m;
    double frac = t - fi;
    const double a = v_[i], b = v_[(i + 1) % m];
    const double partial = h_ * (a * frac + 0.5 * (b - a) * frac * frac);
    return full * prefix_.back() + prefix_[i] + partial;
  }

  std::vector<double> v_;
  double h_;
  std::vector<double> prefix_;
};

/// value(theta) = coeff * dist(theta, anchor)^exponent with exponent > -1.
/// Piecewise power in each complementary gap of the anchor set, so arc
/// integrals have closed forms.
class PowerGapDensity final : public Density {
 public:
  PowerGapDensity(double coeff, double exponent, ClosedSet anchor)
      : coeff_(coeff), exponent_(exponent), anchor_(std::move(anchor)) {
    require(coeff > 0.0, ErrorKind::InvariantViolation, "power density coefficient must be > 0");
    require(exponent > -1.0, ErrorKind::InvariantViolation,
            "power density exponent must exceed -1 for integrability");
    if (exponent < 0.0)
      require(anchor_.measure() < 1e-9, ErrorKind::InvariantViolation,
              "negative exponents need a measure-zero anchor set");
  }
  static PowerGapDensity centered(double coeff, double exponent, double center) {
    return PowerGapDensity(coeff, exponent, ClosedSet::from_points({center}));
  }

  DensityKind kind() const override { return DensityKind::power_gap; }
  double coeff() const { return coeff_; }
  double exponent() const { return exponent_; }
  const ClosedSet& anchor() const { return anchor_; }

  double value(double theta) const override {
    const double d = anchor_.distance(theta);
    if (d <= 0.0) return exponent_ > 0.0 ? 0.0 : (exponent_ == 0.0 ? coeff_ : HUGE_VAL);
    return coeff_ * std::pow(d, exponent_);
  }

  double arc_integral(double lo, double hi) const override {
    if (!(hi > lo)) return 0.0;
    double len = std::min(hi - lo, two_pi);
    double acc = 0.0;
    for (const Gap& g : anchor_.gaps()) {
      // the gap repeats with period 2*pi; collect copies meeting [lo, lo+len]
      double gs = g.start;
      double k = std::floor((lo - gs) / two_pi);
      for (double shift = k * two_pi; gs + shift < lo + len; shift += two_pi) {
        const double a = gs + shift, b = a + g.length;
        const double u = std::max(a, lo), v = std::min(b, lo + len);
        if (v > u) acc += gap_piece(a, b, u, v);
      }
    }
    return acc;
  }

  std::vector<double> split_angles() const override {
    std::vector<double> s = anchor_.boundary_points(1u << 12);
    // gap midpoints are derivative kinks of the distance function
    if (anchor_.gaps().size() <= (1u << 11))
      for (const Gap& g : anchor_.gaps()) s.push_back(wrap_angle(g.start + 0.5 * g.length));
    return s;
  }

 private:
  // integral of coeff*dist^exponent over [u, v] inside gap (a, b)
  double gap_piece(double a, double b, double u, double v) const {
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    if (u < mid) {  // dist = theta - a
      const double vv = std::min(v, mid);
      acc += primitive(vv - a) - primitive(u - a);
    }
    if (v > mid) {  // dist = b - theta
      const double uu = std::max(u, mid);
      acc += primitive(b - uu) - primitive(b - v);
    }
    return acc;
  }
  double primitive(double d) const {
    if (d <= 0.0) return 0.0;
    return coeff_ * std::pow(d, exponent_ + 1.0) / (exponent_ + 1.0);
  }

  double coeff_;
  double exponent_;
  ClosedSet anchor_;
};

// ---------------------------------------------------------------------------
// Measure
// ---------------------------------------------------------------------------

class Measure {
 public:
  static constexpr double poisson_guard = 1.0 - 0x1p-40;
  static constexpr long default_max_order = 8192;

  Measure() { finalize(); }

  static Measure zero() { return Measure(); }

  static Measure dirac(double theta, double mass = 1.0) {
    return from_parts({Atom{wrap_angle(theta), mass}}, nullptr, std::nullopt);
  }

  static Measure lebesgue(double mass = 1.0) {
    return from_parts({}, std::make_shared<UniformDensity>(mass), std::nullopt);
  }

  static Measure from_parts(std::vector<Atom> atoms, std::shared_ptr<const Density> density,
                            std::optional<CantorPart> cantor) {
    Measure m;
    m.atoms_ = std::move(atoms);
    m.density_ = std::move(density);
    m.cantor_ = cantor;
    for (Atom& a : m.atoms_) {
      require(a.mass > 0.0 && std::isfinite(a.mass), ErrorKind::InvariantViolation,
              "atom masses must be positive and finite");
      a.theta = wrap_angle(a.theta);
    }
    if (cantor) {
      require(cantor->ratio > 0.0 && cantor->ratio < 0.5, ErrorKind::InvariantViolation,
              "cantor ratio must lie in (0, 1/2): cells overlap otherwise");
      require(cantor->depth >= 1 && cantor->depth <= 24, ErrorKind::InvariantViolation,
              "cantor depth must lie in [1, 24]");
      require(cantor->mass > 0.0, ErrorKind::InvariantViolation, "cantor mass must be positive");
      require(cantor->base_hi > cantor->base_lo &&
                  cantor->base_hi - cantor->base_lo <= two_pi,
              ErrorKind::InvariantViolation, "cantor base arc must have length in (0, 2*pi]");
    }
    m.finalize();
    return m;
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::shared_ptr<const Density>& density() const { return density_; }
  const std::optional<CantorPart>& cantor() const { return cantor_; }

  double total_mass() const { return total_; }
  bool is_zero() const { return total_ <= 0.0; }

  /// Number of materialized point masses (explicit atoms + Cantor cells).
  std::size_t point_mass_count() const { return pm_theta_.size(); }
  const std::vector<double>& point_mass_angles() const { return pm_theta_; }
  const std::vector<double>& point_mass_values() const { return pm_mass_; }

  // -- arc mass --------------------------------------------------------------

  /// mu of the closed arc; atoms on the boundary are included.
  double arc_mass(const Arc& arc) const {
    require(arc.half >= 0.0 && arc.half <= pi, ErrorKind::PreconditionFailed,
            "arc half-length must lie in [0, pi]");
    if (arc.is_full_circle()) return total_;
    double m = point_mass_in_closed(arc.lo(), arc.hi());
    if (density_) m += density_->arc_integral(arc.lo(), arc.hi());
    return m;
  }

  /// Masses of the n half-open grid panels [theta_j, theta_{j+1}),
  /// theta_j = -pi + 2*pi*j/n. Sums exactly to the total mass.
  std::vector<double> panel_masses(std::size_t n) const {
    std::vector<double> nu(n, 0.0);
    const double h = two_pi / static_cast<double>(n);
    for (std::size_t i = 0; i < pm_theta_.size(); ++i) {
      double x = (pm_theta_[i] + pi) / h;
      std::size_t j = static_cast<std::size_t>(std::floor(x)) % n;
      nu[j] += pm_mass_[i];
    }
    if (density_)
      for (std::size_t j = 0; j < n; ++j)
        nu[j] += density_->arc_integral(-pi + j * h, -pi + (j + 1) * h);
    return nu;
  }

  // -- Poisson integral -------------------------------------------------------

  /// P[mu](z) = int (1-|z|^2)/|zeta-z|^2 dmu(zeta), |z| within the guard band.
  double poisson(Complex z) const {
    require(std::abs(z) <= poisson_guard, ErrorKind::BoundaryTooClose,
            "evaluation point too close to the boundary");
    return poisson_unguarded(z);
  }

  /// Same integral without the guard check. Used by the kernel integrand,
  /// where the radial quadrature approaches the boundary analytically.
  double poisson_unguarded(Complex z) const {
    const double r = std::abs(z);
    require(r < 1.0, ErrorKind::PreconditionFailed, "Poisson integral needs |z| < 1");
    if (is_zero()) return 0.0;
    if (r == 0.0) return total_;
    const double phi = std::arg(z);
    const double one_minus_r2 = (1.0 - r) * (1.0 + r);
    auto kernel = [r, phi, one_minus_r2](double theta) {
      const double c = std::cos(theta - phi);
      return one_minus_r2 / (1.0 - 2.0 * r * c + r * r);
    };
    double acc = cluster_sum(kernel, phi, 1.0 - r, 0x1p-6);
    if (density_) {
      if (density_->kind() == DensityKind::uniform) {
        acc += density_->total();  // mean-value property
      } else {
        std::vector<double> toward = density_->split_angles();
        toward.push_back(phi);
        for (double& t : toward) t = shift_near(t, phi);
        auto f = [&](double theta) { return kernel(theta) * density_->value(theta); };
        acc += integrate_refined(f, phi - pi, phi + pi, toward,
                                 1e-10 * std::max(density_->total(), 1e-6),
                                 std::max((1.0 - r) / 32.0, 1e-18));
      }
    }
    return acc;
  }

  // -- F_mu --------------------------------------------------------------------

  /// F(x) = int x^2/(x^2 + s^2) dmu(e^{is}), s the angle in (-pi, pi].
  double f_mu(double x) const {
    require(x >= 0.0 && x <= pi, ErrorKind::PreconditionFailed, "f_mu needs x in [0, pi]");
    if (is_zero()) return 0.0;
    if (x == 0.0) return point_mass_in_closed(0.0, 0.0);
    const double x2 = x * x;
    auto kernel = [x2](double theta) {
      const double s = wrap_angle(theta);
      return x2 / (x2 + s * s);
    };
    double acc = cluster_sum(kernel, 0.0, x, 0x1p-6);
    if (density_) {
      if (density_->kind() == DensityKind::uniform) {
        acc += density_->total() * (x / pi) * std::atan(pi / x);
      } else {
        std::vector<double> toward = density_->split_angles();
        toward.push_back(0.0);
        auto f = [&](double theta) { return kernel(theta) * density_->value(theta); };
        acc += integrate_refined(f, -pi, pi, toward, 1e-10 * std::max(density_->total(), 1e-6),
                                 std::max(x / 32.0, 1e-18));
      }
    }
    return acc;
  }

  // -- Fourier-Stieltjes moments ----------------------------------------------

  /// moment(k) = int e^{-ik theta} dmu(theta); moment(-k) = conj(moment(k)).
  Complex fourier_moment(long k, long max_order = default_max_order) const {
    require(std::labs(k) <= max_order, ErrorKind::OrderTooLarge,
            "moment order exceeds the configured maximum");
    if (k == 0) return Complex(total_, 0.0);
    if (k < 0) return std::conj(fourier_moment(-k, max_order));
    Complex acc(0.0, 0.0);
    for (const Atom& a : atoms_) acc += a.mass * std::polar(1.0, -k * a.theta);
    if (cantor_) acc += cantor_moment(*cantor_, k);
    if (density_) acc += density_moment(k);
    return acc;
  }

  // -- modulus of continuity ----------------------------------------------------

  /// sup over centers of the closed-arc mass mu([c-t, c+t]).
  double modulus_of_continuity(double t) const {
    require(t > 0.0 && t <= pi, ErrorKind::PreconditionFailed, "modulus needs t in (0, pi]");
    if (is_zero()) return 0.0;
    if (t >= pi) return total_;
    if (!density_) return atomic_window_max(2.0 * t);
    // grid of candidate centers + window endpoints at atoms, then local refine
    double best = 0.0;
    double best_c = 0.0;
    auto consider = [&](double c) {
      const double v = arc_mass(Arc{wrap_angle(c), t});
      if (v > best) {
        best = v;
        best_c = wrap_angle(c);
      }
    };
    const std::size_t grid = 1u << 12;
    for (std::size_t i = 0; i < grid; ++i) consider(-pi + two_pi * (i + 0.5) / grid);
    if (pm_theta_.size() <= (1u << 13))
      for (double th : pm_theta_) {
        consider(th + t);
        consider(th - t);
      }
    if (density_)
      for (double s : density_->split_angles()) {
        consider(s + t);
        consider(s - t);
        consider(s);
      }
    double step = two_pi / grid;
    for (int it = 0; it < 24 && step > 1e-13; ++it) {
      const double c0 = best_c;
      for (int s = -4; s <= 4; ++s) consider(c0 + s * step / 4.0);
      step /= 4.0;
    }
    return best;
  }

  // -- support ------------------------------------------------------------------

  bool has_support() const { return total_ > 0.0; }

  /// Sample directions from supp(mu): atom angles, Cantor cell centers and a
  /// uniform grid wherever a density is present.
  std::vector<double> support_samples(std::size_t budget) const {
    std::vector<double> s;
    if (budget == 0 || is_zero()) return s;
    if (pm_theta_.size() <= budget / 2) {
      s = pm_theta_;
    } else {
      const std::size_t stride = pm_theta_.size() / (budget / 2);
      for (std::size_t i = 0; i < pm_theta_.size(); i += stride) s.push_back(pm_theta_[i]);
    }
    if (density_ && density_->total() > 0.0) {
      const std::size_t g = std::max<std::size_t>(budget / 2, 8);
      for (std::size_t i = 0; i < g; ++i) {
        double th = -pi + two_pi * (i + 0.5) / g;
        if (density_->value(th) > 0.0) s.push_back(th);
      }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  /// Observed arc-doubling constant max mu-hat(2x)/mu-hat(x) over a dyadic grid.
  double doubling_constant(int j_min = 1, int j_max = 16) const {
    double c = 0.0;
    for (int j = j_min; j <= j_max; ++j) {
      const double x = pi * std::pow(0.5, j);
      const double num = arc_mass(Arc{0.0, std::min(2.0 * x, pi)});
      const double den = arc_mass(Arc{0.0, x});
      if (den > 0.0) c = std::max(c, num / den);
    }
    return c;
  }

  /// Clustered sum of a smooth kernel over all materialized point masses.
  /// `singular_at` and `scale` describe where the kernel varies fastest;
  /// eta controls the cluster-opening criterion.
  template <class F>
  double cluster_sum(const F& f, double singular_at, double scale, double eta) const {
    if (pm_theta_.empty()) return 0.0;
    if (pm_theta_.size() <= 512) {
      double acc = 0.0;
      for (std::size_t i = 0; i < pm_theta_.size(); ++i) acc += pm_mass_[i] * f(pm_theta_[i]);
      return acc;
    }
    return cluster_rec(f, 0, pm_theta_.size(), wrap_angle(singular_at), scale, eta);
  }

 private:
  void finalize() {
    total_ = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (const Atom& a : atoms_) {
      pts.emplace_back(a.theta, a.mass);
      total_ += a.mass;
    }
    if (cantor_) {
      materialize_cantor(*cantor_, pts);
      total_ += cantor_->mass;
    }
    if (density_) total_ += density_->total();
    std::sort(pts.begin(), pts.end());
    pm_theta_.resize(pts.size());
    pm_mass_.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      pm_theta_[i] = pts[i].first;
      pm_mass_[i] = pts[i].second;
    }
    pm_prefix_.assign(pts.size() + 1, 0.0);
    pm_t_prefix_.assign(pts.size() + 1, 0.0);
    pm_t2_prefix_.assign(pts.size() + 1, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      pm_prefix_[i + 1] = pm_prefix_[i] + pm_mass_[i];
      pm_t_prefix_[i + 1] = pm_t_prefix_[i] + pm_mass_[i] * pm_theta_[i];
      pm_t2_prefix_[i + 1] = pm_t2_prefix_[i] + pm_mass_[i] * pm_theta_[i] * pm_theta_[i];
    }
  }

  static void materialize_cantor(const CantorPart& c, std::vector<std::pair<double, double>>& out) {
    const std::size_t n = std::size_t(1) << c.depth;
    const double unit_mass = c.mass / static_cast<double>(n);
    const double len = c.base_hi - c.base_lo;
    const double center = 0.5 * (c.base_lo + c.base_hi);
    std::vector<double> disp(c.depth);
    double cell = len;
    for (int g = 0; g < c.depth; ++g) {
      disp[g] = 0.5 * cell * (1.0 - c.ratio);
      cell *= c.ratio;
    }
    out.reserve(out.size() + n);
    for (std::size_t idx = 0; idx < n; ++idx) {
      double th = center;
      for (int g = 0; g < c.depth; ++g)
        th += ((idx >> (c.depth - 1 - g)) & 1u) ? disp[g] : -disp[g];
      out.emplace_back(wrap_angle(th), unit_mass);
    }
  }

  // mass of point masses in the closed arc [lo, hi] (angles unwrapped, hi >= lo)
  double point_mass_in_closed(double lo, double hi) const {
    if (pm_theta_.empty()) return 0.0;
    double a = wrap_angle(lo), b = wrap_angle(hi);
    if (hi - lo >= two_pi) return pm_prefix_.back();
    auto mass_between = [this](double x, double y) {  // x <= y, both in (-pi, pi]
      auto i0 = std::lower_bound(pm_theta_.begin(), pm_theta_.end(), x) - pm_theta_.begin();
      auto i1 = std::upper_bound(pm_theta_.begin(), pm_theta_.end(), y) - pm_theta_.begin();
      return pm_prefix_[i1] - pm_prefix_[i0];
    };
    if (a <= b) return mass_between(a, b);
    return mass_between(a, pi) + mass_between(-pi, b);
  }

  // exact sliding closed-window maximum over point masses (window width w);
  // the maximum over closed windows is attained with the left edge at an atom
  double atomic_window_max(double w) const {
    const std::size_t n = pm_theta_.size();
    if (n == 0) return 0.0;
    if (w >= two_pi) return pm_prefix_.back();
    double best = 0.0;
    std::size_t j = 0;  // exclusive end in doubled coordinates
    for (std::size_t i = 0; i < n; ++i) {
      if (j < i + 1) j = i + 1;  // the window always contains atom i
      const double end = pm_theta_[i] + w;
      while (j < i + n) {
        const double th = (j < n) ? pm_theta_[j] : pm_theta_[j - n] + two_pi;
        if (th <= end + 1e-15)
          ++j;
        else
          break;
      }
      best = std::max(best, prefix_wrapped(j) - pm_prefix_[i]);
    }
    return std::min(best, pm_prefix_.back());
  }

  double prefix_wrapped(std::size_t idx) const {
    const std::size_t n = pm_theta_.size();
    return (idx <= n) ? pm_prefix_[idx] : pm_prefix_.back() + pm_prefix_[idx - n];
  }

  template <class F>
  double cluster_rec(const F& f, std::size_t i, std::size_t j, double phi, double scale,
                     double eta) const {
    const std::size_t count = j - i;
    if (count <= 16) {
      double acc = 0.0;
      for (std::size_t k = i; k < j; ++k) acc += pm_mass_[k] * f(pm_theta_[k]);
      return acc;
    }
    const double lo = pm_theta_[i], hi = pm_theta_[j - 1];
    const double width = hi - lo;
    double dist = 0.0;  // wrapped distance from [lo, hi] to phi
    {
      const double d = std::remainder(phi - lo, two_pi);
      if (d < 0.0 || d > width) {
        const double dl = angle_distance(phi, lo);
        const double dh = angle_distance(phi, hi);
        dist = std::min(dl, dh);
      }
    }
    if (width > eta * (dist + scale)) {
      const std::size_t mid = i + count / 2;
      return cluster_rec(f, i, mid, phi, scale, eta) + cluster_rec(f, mid, j, phi, scale, eta);
    }
    const double m = pm_prefix_[j] - pm_prefix_[i];
    if (m <= 0.0) return 0.0;
    const double mean = (pm_t_prefix_[j] - pm_t_prefix_[i]) / m;
    const double var =
        std::max(0.0, (pm_t2_prefix_[j] - pm_t2_prefix_[i]) / m - mean * mean);
    const double h = std::max(0.5 * width, 1e-9);
    const double f0 = f(mean);
    const double fpp = (f(mean + h) - 2.0 * f0 + f(mean - h)) / (h * h);
    return m * (f0 + 0.5 * var * fpp);
  }

  Complex cantor_moment(const CantorPart& c, long k) const {
    const double center = 0.5 * (c.base_lo + c.base_hi);
    double cell = c.base_hi - c.base_lo;
    double prod = 1.0;
    for (int g = 0; g < c.depth; ++g) {
      const double d = 0.5 * cell * (1.0 - c.ratio);
      prod *= std::cos(k * d);
      cell *= c.ratio;
    }
    return c.mass * prod * std::polar(1.0, -static_cast<double>(k) * center);
  }

  Complex density_moment(long k) const {
    switch (density_->kind()) {
      case DensityKind::uniform:
        return Complex(0.0, 0.0);
      case DensityKind::samples: {
        const auto* d = static_cast<const SampleDensity*>(density_.get());
        return sample_density_moment(*d, k);
      }
      case DensityKind::power_gap: {
        // oscillation-resolved panels split at the anchor's gap endpoints
        const auto* d = static_cast<const PowerGapDensity*>(density_.get());
        std::vector<double> cuts = d->split_angles();
        cuts.push_back(-pi);
        cuts.push_back(pi);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        const double max_w = 6.0 / static_cast<double>(k);
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
          double a = cuts[i], b = cuts[i + 1];
          if (!(b > a)) continue;
          const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / max_w)));
          const double w = (b - a) / pieces;
          for (int p = 0; p < pieces; ++p) {
            const double u = a + p * w, v = u + w;
            re += integrate_gl(
                [&](double t) { return density_->value(t) * std::cos(k * t); }, u, v, 12);
            im += integrate_gl(
                [&](double t) { return density_->value(t) * std::sin(k * t); }, u, v, 12);
          }
        }
        return Complex(re, -im);
      }
    }
    return Complex(0.0, 0.0);
  }

  static Complex sample_density_moment(const SampleDensity& d, long k) {
    // exact piecewise-linear moment: int (a + b (t-t0)) e^{-ikt} dt per segment
    const auto& v = d.samples();
    const std::size_t m = v.size();
    const double h = two_pi / static_cast<double>(m);
    Complex acc(0.0, 0.0);
    const Complex ik(0.0, static_cast<double>(k));
    for (std::size_t i = 0; i < m; ++i) {
      const double t0 = -pi + i * h, t1 = t0 + h;
      const double a = v[i], b = (v[(i + 1) % m] - v[i]) / h;
      const Complex e0 = std::polar(1.0, -k * t0), e1 = std::polar(1.0, -k * t1);
      // int_{t0}^{t1} (a + b(t-t0)) e^{-ikt} dt
      const Complex term = (-(a + b * (t1 - t0)) * e1 + a * e0) / ik + b * (e0 - e1) / (ik * ik);
      acc += term;
    }
    return acc;
  }

  static double shift_near(double angle, double ref) {
    // representative of `angle` (mod 2*pi) closest to ref
    return ref + std::remainder(angle - ref, two_pi);
  }

  std::vector<Atom> atoms_;
  std::shared_ptr<const Density> density_;
  std::optional<CantorPart> cantor_;
  double total_ = 0.0;

  std::vector<double> pm_theta_;  // sorted materialized point masses
  std::vector<double> pm_mass_;
  std::vector<double> pm_prefix_;
  std::vector<double> pm_t_prefix_;
  std::vector<double> pm_t2_prefix_;
};

namespace detail {
/// Direct (brute-force) Poisson sum over point masses; test oracle.
inline double poisson_point_masses_direct(const Measure& mu, Complex z) {
  const double r = std::abs(z), phi = std::arg(z);
  const double num = (1.0 - r) * (1.0 + r);
  double acc = 0.0;
  const auto& th = mu.point_mass_angles();
  const auto& ms = mu.point_mass_values();
  for (std::size_t i = 0; i < th.size(); ++i) {
    const double c = std::cos(th[i] - phi);
    acc += ms[i] * num / (1.0 - 2.0 * r * c + r * r);
  }
  return acc;
}
}  // namespace detail

}  // namespace dmu
