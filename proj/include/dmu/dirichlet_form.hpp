#pragma once

// Discretization of the double-integral Dirichlet energy
//   D(u) = (1/2*pi) int_T int_T (u(t)-u(s))^2 / |e^{it}-e^{is}|^2 dt dmu(s)
// for piecewise-linear u on a uniform n-grid (n a power of two). The measure
// is lumped into panel masses at panel centers; the kernel is integrated
// against the linear pieces through per-offset panel moments, with the
// singular same-panel contribution handled by the bounded profile
// Q(x) = (x / (2 sin(x/2)))^2. Energy and gradient apply in O(n log n) via
// cyclic convolutions.

#include <cmath>
#include <cstddef>
#include <vector>

#include "dmu/circle.hpp"
#include "dmu/errors.hpp"
#include "dmu/fft.hpp"
#include "dmu/measure.hpp"
#include "dmu/quadrature.hpp"

namespace dmu {

class DirichletFormGrid {
 public:
  DirichletFormGrid(const Measure& mu, std::size_t n) : n_(n), h_(two_pi / static_cast<double>(n)) {
    require(is_power_of_two(n) && n >= 8, ErrorKind::PreconditionFailed,
            "grid size must be a power of two, >= 8");
    nu_ = mu.panel_masses(n);

    auto kernel = [](double x) {
      const double s = std::sin(0.5 * x);
      return 1.0 / (4.0 * s * s);
    };
    // per-offset moments of the kernel against the linear parameterization
    std::vector<double> A(n, 0.0), B(n, 0.0), C(n, 0.0);
    for (std::size_t o = 1; o < n; ++o) {
      const double base = (static_cast<double>(o) - 0.5) * h_;
      const int order = (o <= 4 || o >= n - 4) ? 24 : 8;
      A[o] = h_ * integrate_gl([&](double t) { return kernel(base + t * h_); }, 0.0, 1.0, order);
      B[o] =
          h_ * integrate_gl([&](double t) { return t * kernel(base + t * h_); }, 0.0, 1.0, order);
      C[o] = h_ * integrate_gl([&](double t) { return t * t * kernel(base + t * h_); }, 0.0, 1.0,
                               order);
    }
    // same-panel: (u(t) - u(center))^2 K = slope^2 Q(t - center), Q bounded
    auto q_profile = [](double x) {
      if (std::abs(x) < 1e-12) return 1.0;
      const double s = 2.0 * std::sin(0.5 * x);
      return x * x / (s * s);
    };
    // int_panel (slope (t - center))^2 K dt = (du)^2 / h * int Q(sigma h) dsigma
    s0_ = integrate_gl([&](double sig) { return q_profile(sig * h_); }, -0.5, 0.5, 20) / h_;

    sum_a_ = 0.0;
    for (std::size_t o = 1; o < n; ++o) sum_a_ += A[o];

    // stencil kernels
    std::vector<double> alpha(n, 0.0), gamma(n, 0.0), beta(n, 0.0), kappa(n, 0.0);
    for (std::size_t o = 1; o < n; ++o) {
      alpha[o] = A[o] - 2.0 * B[o] + C[o];
      gamma[o] = C[o];
      beta[o] = 2.0 * (B[o] - C[o]);
    }
    // kappa_o = delta_o + eps_{o-1}, delta = 2(B-A), eps = -2B
    for (std::size_t o = 0; o < n; ++o) {
      double v = 0.0;
      if (o != 0) v += 2.0 * (B[o] - A[o]);
      const std::size_t om1 = (o + n - 1) % n;
      if (om1 != 0) v += -2.0 * B[om1];
      kappa[o] = v;
    }

    const auto nu_fft = fft_of_real(nu_);
    auto conv_with_nu = [&](const std::vector<double>& k) {
      auto kf = fft_of_real(k);
      for (std::size_t i = 0; i < kf.size(); ++i) kf[i] *= nu_fft[i];
      std::vector<Complex> a(kf);
      fft_inplace(a, true);
      std::vector<double> out(n_);
      for (std::size_t i = 0; i < n_; ++i) out[i] = a[i].real();
      return out;
    };
    w_alpha_ = conv_with_nu(alpha);
    w_gamma_ = conv_with_nu(gamma);
    w_beta_ = conv_with_nu(beta);

    kappa_fft_ = fft_of_real(kappa);
    for (auto& c : kappa_fft_) c = std::conj(c);  // correlation spectrum
    kappa_conv_fft_ = fft_of_real(kappa);
  }

  std::size_t size() const { return n_; }
  double spacing() const { return h_; }
  const std::vector<double>& panel_masses() const { return nu_; }
  double node_angle(std::size_t i) const { return -pi + static_cast<double>(i) * h_; }

  /// Dirichlet part D(u) alone.
  double dirichlet(const std::vector<double>& u) const {
    return assemble(u, nullptr) / two_pi;
  }

  /// Squared norm |u|^2 = |u|^2_{L2(dm)} + D(u).
  double energy(const std::vector<double>& u) const { return l2(u) + dirichlet(u); }

  /// Gradient of energy(u); allocates the output.
  std::vector<double> gradient(const std::vector<double>& u) const {
    std::vector<double> g(n_, 0.0);
    assemble(u, &g);
    for (std::size_t q = 0; q < n_; ++q) {
      const std::size_t qp = (q + 1) % n_, qm = (q + n_ - 1) % n_;
      g[q] = g[q] / two_pi + h_ / 3.0 * (4.0 * u[q] + u[qp] + u[qm]) / two_pi;
    }
    return g;
  }

  double l2(const std::vector<double>& u) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double a = u[i], b = u[(i + 1) % n_];
      acc += h_ / 3.0 * (a * a + a * b + b * b);
    }
    return acc / two_pi;
  }

 private:
  // returns 2*pi * D(u); when grad is non-null, adds 2*pi * dD/du into it
  double assemble(const std::vector<double>& u, std::vector<double>* grad) const {
    const std::size_t n = n_;
    std::vector<double> m(n), numu(n);
    for (std::size_t j = 0; j < n; ++j) {
      m[j] = 0.5 * (u[j] + u[(j + 1) % n]);
      numu[j] = nu_[j] * m[j];
    }
    const std::vector<double> c = cyclic_convolve(u, kappa_fft_);      // corr(u, kappa)
    double e = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double du = u[(j + 1) % n] - u[j];
      e += nu_[j] * du * du * s0_;
      e += nu_[j] * (sum_a_ * m[j] * m[j] + m[j] * c[j]);
    }
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t pm = (p + n - 1) % n;
      e += (w_alpha_[p] + w_gamma_[pm]) * u[p] * u[p];
      e += w_beta_[p] * u[p] * u[(p + 1) % n];
    }
    if (grad) {
      const std::vector<double> numu_k = cyclic_convolve(numu, kappa_conv_fft_);  // conv(nu m, kappa)
      auto& g = *grad;
      for (std::size_t q = 0; q < n; ++q) {
        const std::size_t qm = (q + n - 1) % n, qp = (q + 1) % n;
        const double dq = u[qp] - u[q], dqm = u[q] - u[qm];
        double v = 2.0 * s0_ * (nu_[qm] * dqm - nu_[q] * dq);
        v += 2.0 * (w_alpha_[q] + w_gamma_[qm]) * u[q];
        v += w_beta_[q] * u[qp] + w_beta_[qm] * u[qm];
        v += sum_a_ * (nu_[q] * m[q] + nu_[qm] * m[qm]);
        v += numu_k[q] + 0.5 * (nu_[q] * c[q] + nu_[qm] * c[qm]);
        g[q] += v;
      }
    }
    return e;
  }

  std::size_t n_;
  double h_;
  std::vector<double> nu_;
  std::vector<double> w_alpha_, w_gamma_, w_beta_;
  std::vector<Complex> kappa_fft_;       // conjugated spectrum (correlation)
  std::vector<Complex> kappa_conv_fft_;  // plain spectrum (convolution)
  double s0_ = 0.0;
  double sum_a_ = 0.0;
};

namespace detail {
/// Direct O(n^2) evaluation of the same discretization; test oracle.
inline double dirichlet_grid_direct(const Measure& mu, const std::vector<double>& u) {
  const std::size_t n = u.size();
  const double h = two_pi / static_cast<double>(n);
  const std::vector<double> nu = mu.panel_masses(n);
  auto kernel = [](double x) {
    const double s = std::sin(0.5 * x);
    return 1.0 / (4.0 * s * s);
  };
  auto q_profile = [](double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    const double s = 2.0 * std::sin(0.5 * x);
    return x * x / (s * s);
  };
  double e = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (nu[j] == 0.0) continue;
    const double mj = 0.5 * (u[j] + u[(j + 1) % n]);
    // same panel
    {
      const double du = (u[(j + 1) % n] - u[j]);
      const double q = integrate_gl([&](double sig) { return q_profile(sig * h); }, -0.5, 0.5, 20);
      e += nu[j] * du * du * q / h;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      long o = static_cast<long>(i) - static_cast<long>(j);
      const double base = (static_cast<double>(o) - 0.5) * h;
      const double val = h * integrate_gl(
                                 [&](double t) {
                                   const double ut = u[i] + (u[(i + 1) % n] - u[i]) * t;
                                   const double d = ut - mj;
                                   return d * d * kernel(base + t * h);
                                 },
                                 0.0, 1.0, 24);
      e += nu[j] * val;
    }
  }
  return e / two_pi;
}
}  // namespace detail

}  // namespace dmu
