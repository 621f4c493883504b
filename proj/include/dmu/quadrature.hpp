#pragma once

// Composite Gauss-Legendre quadrature with adaptive bisection and dyadic
// panel refinement toward integrable singularities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include "dmu/circle.hpp"

namespace dmu {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

namespace detail {

// Legendre P_n and its derivative at x by upward recurrence.
inline void legendre_pair(int n, double x, double& p, double& dp) {
  double p1 = 1.0, p2 = 0.0;
  for (int j = 0; j < n; ++j) {
    double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
  }
  p = p1;
  dp = n * (x * p1 - p2) / (x * x - 1.0);
}

inline GaussRule compute_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, p, dp);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace detail

/// Cached Gauss-Legendre rule of order n.
inline const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_rule(n)).first;
  return it->second;
}

template <class F>
double integrate_gl(const F& f, double a, double b, int order) {
  const GaussRule& r = gauss_rule(order);
  const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * f(mid + rad * r.nodes[i]);
  return sum * rad;
}

namespace detail {

template <class F>
double adaptive_rec(const F& f, double a, double b, double tol_abs, int depth, int max_depth) {
  const double coarse = integrate_gl(f, a, b, 8);
  const double fine = integrate_gl(f, a, b, 16);
  const double accept = std::max(tol_abs, 5e-15 * std::abs(fine));
  if (depth >= max_depth || std::abs(fine - coarse) <= accept) return fine;
  const double m = 0.5 * (a + b);
  return adaptive_rec(f, a, m, 0.5 * tol_abs, depth + 1, max_depth) +
         adaptive_rec(f, m, b, 0.5 * tol_abs, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive Gauss-Legendre on [a, b]; tolerance is absolute.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double tol_abs, int max_depth = 24) {
  if (!(b > a)) return 0.0;
  return detail::adaptive_rec(f, a, b, tol_abs, 0, max_depth);
}

/// Splits [a, b] into panels refined geometrically toward the break angles in
/// `toward` (clipped to the interval) and integrates each panel adaptively.
/// min_scale bounds the smallest panel width at each refinement target.
template <class F>
double integrate_refined(const F& f, double a, double b, const std::vector<double>& toward,
                         double tol_abs, double min_scale = 1e-14) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts;
  cuts.push_back(a);
  cuts.push_back(b);
  for (double t : toward) {
    if (t <= a || t >= b) continue;
    cuts.push_back(t);
    for (double w = (b - a); w > min_scale; w *= 0.5) {
      if (t - w > a) cuts.push_back(t - w);
      if (t + w < b) cuts.push_back(t + w);
    }
  }
  // Refinement toward interval endpoints when they are targets.
  for (double t : toward) {
    if (t == a)
      for (double w = (b - a) * 0.5; w > min_scale; w *= 0.5) cuts.push_back(a + w);
    if (t == b)
      for (double w = (b - a) * 0.5; w > min_scale; w *= 0.5) cuts.push_back(b - w);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-16; }),
             cuts.end());
  double total = 0.0;
  const double panel_tol = tol_abs / static_cast<double>(cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += detail::adaptive_rec(f, cuts[i], cuts[i + 1], panel_tol, 0, 10);
  return total;
}

}  // namespace dmu
