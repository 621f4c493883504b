#pragma once

// Diagonal reproducing-kernel machinery for the mu-weighted Dirichlet space:
// a radial-integral estimator of k(z,z), the exact polynomial-subspace
// oracle assembled from the monomial Gram matrix, the support infimum
// kappa_mu, and the zero-set summability test.

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "dmu/circle.hpp"
#include "dmu/divergence.hpp"
#include "dmu/errors.hpp"
#include "dmu/measure.hpp"
#include "dmu/quadrature.hpp"

namespace dmu {

struct KernelReport {
  Complex z;
  double estimate = 1.0;
  std::optional<double> oracle;
  int order = 0;
  double quad_error = 0.0;
};

/// 1 + int_0^{|z|} dr / ((1-r) P[mu](r z/|z|) + (1-r)^2), quadrature on
/// dyadic panels toward r = |z| in the variable x = 1 - r.
inline double kernel_diag_estimate(const Measure& mu, Complex z, double* quad_error = nullptr) {
  const double r = std::abs(z);
  require(r < 1.0, ErrorKind::PreconditionFailed, "kernel diagonal needs |z| < 1");
  if (quad_error) *quad_error = 0.0;
  if (r == 0.0) return 1.0;
  const Complex dir = z / r;
  auto integrand = [&mu, dir](double x) {
    const double p = mu.poisson_unguarded((1.0 - x) * dir);
    return 1.0 / (x * p + x * x);
  };
  const double x_lo = 1.0 - r;
  double total = 0.0;
  double err = 0.0;
  double hi = 1.0;
  while (hi > x_lo) {
    const double lo = std::max(0.5 * hi, x_lo);
    const double coarse = integrate_gl(integrand, lo, hi, 8);
    const double fine = integrate_gl(integrand, lo, hi, 16);
    if (std::abs(fine - coarse) <= 1e-8 * std::max(1.0, std::abs(fine))) {
      total += fine;
      err += std::abs(fine - coarse);
    } else {
      total += integrate_adaptive(integrand, lo, hi, 1e-9, 12);
      err += 1e-9;
    }
    hi = lo;
  }
  if (quad_error) *quad_error = err;
  return 1.0 + total;
}

// ---------------------------------------------------------------------------
// Gram oracle
// ---------------------------------------------------------------------------

/// Exact reproducing kernel of the degree-N polynomial subspace. The Gram
/// matrix of monomials under the exact norm is
///   G(m,n) = <z^n, z^m> = delta_{mn} + min(m,n) * moment(m-n),
/// the Dirichlet pairing reducing to Fourier-Stieltjes moments times closed
/// radial integrals. G - I is positive semidefinite, so G >= I.
class GramKernelOracle {
 public:
  GramKernelOracle(const Measure& mu, int order) : order_(order) {
    require(order >= 1, ErrorKind::PreconditionFailed, "oracle order must be >= 1");
    std::vector<Complex> mom(order + 1);
    for (int k = 0; k <= order; ++k)
      mom[k] = mu.fourier_moment(k, std::max<long>(order, Measure::default_max_order));
    Eigen::MatrixXcd g(order + 1, order + 1);
    for (int m = 0; m <= order; ++m) {
      for (int n = 0; n <= order; ++n) {
        const int lo = std::min(m, n);
        Complex v = (m == n) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        if (lo > 0) {
          const int d = m - n;
          v += static_cast<double>(lo) * (d >= 0 ? mom[d] : std::conj(mom[-d]));
        }
        g(m, n) = v;
      }
    }
    ldlt_.compute(g);
    rcond_ = ldlt_.rcond();
    require(ldlt_.info() == Eigen::Success, ErrorKind::IllConditioned,
            "Gram factorization failed, rcond=" + std::to_string(rcond_));
    require(rcond_ > 1e-14, ErrorKind::IllConditioned,
            "Gram matrix numerically singular, rcond=" + std::to_string(rcond_));
  }

  int order() const { return order_; }
  double condition_estimate() const { return 1.0 / std::max(rcond_, 1e-300); }

  /// k_N(z, z) = b* G^{-1} b with b_n = conj(z)^n.
  double kernel_diag(Complex z) const {
    require(std::abs(z) < 1.0, ErrorKind::PreconditionFailed, "oracle needs |z| < 1");
    Eigen::VectorXcd b(order_ + 1);
    Complex pw(1.0, 0.0);
    const Complex zc = std::conj(z);
    for (int n = 0; n <= order_; ++n) {
      b(n) = pw;
      pw *= zc;
    }
    const Eigen::VectorXcd y = ldlt_.solve(b);
    return b.dot(y).real();
  }

 private:
  int order_;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt_;
  double rcond_ = 0.0;
};

inline double gram_kernel_oracle(const Measure& mu, Complex z, int order) {
  return GramKernelOracle(mu, order).kernel_diag(z);
}

inline KernelReport kernel_report(const Measure& mu, Complex z, std::optional<int> oracle_order) {
  KernelReport rep;
  rep.z = z;
  rep.estimate = kernel_diag_estimate(mu, z, &rep.quad_error);
  if (oracle_order) {
    rep.order = *oracle_order;
    rep.oracle = gram_kernel_oracle(mu, z, *oracle_order);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// kappa_mu and zero sets
// ---------------------------------------------------------------------------

/// inf of the diagonal estimate over directions in supp(mu) at radius r,
/// refined by doubling the direction budget until stable. Ties resolve to the
/// first minimizer in angle order.
inline double kappa_mu(const Measure& mu, double r) {
  require(r > 0.0 && r < 1.0, ErrorKind::PreconditionFailed, "kappa needs r in (0, 1)");
  require(mu.has_support(), ErrorKind::EmptySupport, "measure has empty support");
  double prev = -1.0;
  for (std::size_t budget = 1u << 10; budget <= (1u << 12); budget <<= 1) {
    const std::vector<double> dirs = mu.support_samples(budget);
    require(!dirs.empty(), ErrorKind::EmptySupport, "no support samples");
    double best = HUGE_VAL;
    for (double th : dirs) {
      const double v = kernel_diag_estimate(mu, std::polar(r, th));
      if (v < best) best = v;
    }
    if (prev >= 0.0 && std::abs(best - prev) <= 1e-4 * std::max(1.0, std::abs(prev)))
      return std::min(best, prev);
    prev = best;
  }
  return prev;
}

struct ZeroSetReport {
  double sum = 0.0;
  bool admissible = true;
  double cutoff = 1e6;
  std::vector<double> prefix;  // prefix sums at powers of two
};

/// Summability test sum_n 1/k(z_n, z_n) over a finite point family.
inline ZeroSetReport zero_set_admissible(const Measure& mu, const std::vector<Complex>& points,
                                         double cutoff = 1e6) {
  ZeroSetReport rep;
  rep.cutoff = cutoff;
  std::size_t next_record = 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(std::abs(points[i]) < 1.0, ErrorKind::PreconditionFailed, "zero set needs |z| < 1");
    rep.sum += 1.0 / kernel_diag_estimate(mu, points[i]);
    if (i + 1 == next_record || i + 1 == points.size()) {
      rep.prefix.push_back(rep.sum);
      next_record *= 2;
    }
  }
  rep.admissible = rep.sum < cutoff;
  return rep;
}

}  // namespace dmu
