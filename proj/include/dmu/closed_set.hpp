#pragma once

// Closed subsets E of the unit circle stored through their complementary
// gaps. Carries the gap census N_E, the thickened measure |E_t|, covering
// numbers, and the admissible-weight functional M_{psi,E}.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dmu/circle.hpp"
#include "dmu/errors.hpp"
#include "dmu/quadrature.hpp"

namespace dmu {

/// Open arc (start, start + length) of the complement of a ClosedSet.
struct Gap {
  double start = 0.0;   // in (-pi, pi]
  double length = 0.0;  // in (0, 2*pi]
  double end() const { return start + length; }
};

class ClosedSet {
 public:
  ClosedSet() = default;  // full circle (no gaps)

  static ClosedSet full_circle() { return ClosedSet(); }

  static ClosedSet from_gaps(std::vector<Gap> gaps) {
    ClosedSet e;
    e.gaps_ = std::move(gaps);
    e.normalize();
    return e;
  }

  static ClosedSet from_points(std::vector<double> points) {
    require(!points.empty(), ErrorKind::InvariantViolation, "point set must be nonempty");
    for (double& p : points) p = wrap_angle(p);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Gap> gaps;
    const std::size_t n = points.size();
    if (n == 1) {
      gaps.push_back(Gap{points[0], two_pi});
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        double a = points[i];
        double b = (i + 1 < n) ? points[i + 1] : points[0] + two_pi;
        if (b - a > 0) gaps.push_back(Gap{a, b - a});
      }
    }
    return from_gaps(std::move(gaps));
  }

  /// Two-ended Cantor construction: at every generation each cell of length L
  /// keeps its two end cells of length ratio*L. Gaps are materialized down to
  /// the given depth; the complement of the base arc is one more gap.
  static ClosedSet cantor(double ratio, int depth, double base_lo, double base_hi) {
    require(ratio > 0.0 && ratio < 0.5, ErrorKind::InvariantViolation,
            "cantor ratio must lie in (0, 1/2): cells overlap otherwise");
    require(depth >= 1, ErrorKind::InvariantViolation, "cantor depth must be >= 1");
    require(depth <= 24, ErrorKind::InvariantViolation, "cantor depth capped at 24");
    const double len = base_hi - base_lo;
    require(len > 0.0 && len <= two_pi, ErrorKind::InvariantViolation,
            "cantor base arc must have length in (0, 2*pi]");
    std::vector<Gap> gaps;
    gaps.reserve((std::size_t(1) << depth));
    if (len < two_pi) gaps.push_back(Gap{wrap_angle(base_hi), two_pi - len});
    cantor_gaps(ratio, depth, base_lo, len, gaps);
    return from_gaps(std::move(gaps));
  }

  const std::vector<Gap>& gaps() const { return gaps_; }
  bool is_full_circle() const { return gaps_.empty(); }

  /// Lebesgue measure of E.
  double measure() const {
    double s = two_pi;
    for (const Gap& g : gaps_) s -= g.length;
    return std::max(s, 0.0);
  }

  /// Twice the number of complementary gaps longer than 2t.
  long n_count(double t) const {
    require(t > 0.0 && t <= pi, ErrorKind::PreconditionFailed, "n_count needs t in (0, pi]");
    // lengths_sorted_ ascending: count entries > 2t.
    auto it = std::upper_bound(lengths_sorted_.begin(), lengths_sorted_.end(), 2.0 * t);
    return 2 * static_cast<long>(lengths_sorted_.end() - it);
  }

  /// |E_t|: Lebesgue measure of the closed t-neighborhood of E.
  double thickened_length(double t) const {
    require(t > 0.0 && t <= pi, ErrorKind::PreconditionFailed,
            "thickened_length needs t in (0, pi]");
    if (gaps_.empty()) return two_pi;
    // 2*pi - sum over gaps of max(len - 2t, 0), via suffix sums of sorted lengths.
    auto it = std::upper_bound(lengths_sorted_.begin(), lengths_sorted_.end(), 2.0 * t);
    const std::size_t idx = static_cast<std::size_t>(it - lengths_sorted_.begin());
    const double longer_sum = length_suffix_sum_[idx];
    const double longer_cnt = static_cast<double>(lengths_sorted_.size() - idx);
    return two_pi - (longer_sum - 2.0 * t * longer_cnt);
  }

  /// Greedy covering number by closed arcs of length 2*eps, swept from the
  /// leftmost set point (first point of E at or after angle -pi).
  long covering_number(double eps) const {
    require(eps > 0.0 && eps <= pi, ErrorKind::PreconditionFailed,
            "covering_number needs eps in (0, pi]");
    if (gaps_.empty()) return static_cast<long>(std::ceil(pi / eps));
    const double start = next_point_at_or_after(-pi);
    long count = 0;
    double pos = start;
    while (true) {
      ++count;
      double covered_to = pos + 2.0 * eps;
      if (covered_to >= start + two_pi - 1e-15) break;
      double next = next_point_after(covered_to);
      if (next >= start + two_pi - 1e-15) break;
      pos = next;
      if (count > static_cast<long>(4.0 * pi / eps) + 8) break;  // safety
    }
    return count;
  }

  /// Arc-length distance from e^{i theta} to E.
  double distance(double theta) const {
    if (gaps_.empty()) return 0.0;
    const double th = wrap_angle(theta);
    auto gi = gap_containing(th);
    if (!gi) return 0.0;
    const Gap& g = gaps_[*gi];
    double local = th;
    if (local < g.start) local += two_pi;
    return std::min(local - g.start, g.end() - local);
  }

  bool contains(double theta) const { return distance(theta) <= 1e-15; }

  /// Endpoints of complementary gaps; these belong to E and are dense in E
  /// for Cantor-type sets. Capped for very deep constructions.
  std::vector<double> boundary_points(std::size_t cap = 1u << 15) const {
    std::vector<double> pts;
    if (gaps_.empty()) return pts;
    if (2 * gaps_.size() <= cap) {
      pts.reserve(2 * gaps_.size());
      for (const Gap& g : gaps_) {
        pts.push_back(wrap_angle(g.start));
        pts.push_back(wrap_angle(g.end()));
      }
    } else {
      // keep endpoints of the longest gaps
      std::vector<std::size_t> order(gaps_.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return gaps_[a].length > gaps_[b].length;
      });
      for (std::size_t i = 0; i < cap / 2; ++i) {
        pts.push_back(wrap_angle(gaps_[order[i]].start));
        pts.push_back(wrap_angle(gaps_[order[i]].end()));
      }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  /// Nearest point of E to the given angle (the angle itself if it lies in E).
  double project(double theta) const {
    if (gaps_.empty()) return wrap_angle(theta);
    const double th = wrap_angle(theta);
    auto gi = gap_containing(th);
    if (!gi) return th;
    const Gap& g = gaps_[*gi];
    double local = th;
    if (local < g.start) local += two_pi;
    return (local - g.start <= g.end() - local) ? wrap_angle(g.start) : wrap_angle(g.end());
  }

  /// Ascending distinct gap lengths with multiplicities.
  const std::vector<std::pair<double, long>>& length_histogram() const { return length_hist_; }

 private:
  static void cantor_gaps(double ratio, int depth, double lo, double len,
                          std::vector<Gap>& out) {
    if (depth == 0) return;
    const double child = ratio * len;
    out.push_back(Gap{wrap_angle(lo + child), len - 2.0 * child});
    cantor_gaps(ratio, depth - 1, lo, child, out);
    cantor_gaps(ratio, depth - 1, lo + len - child, child, out);
  }

  void normalize() {
    for (Gap& g : gaps_) {
      require(g.length > 0.0 && g.length <= two_pi, ErrorKind::InvariantViolation,
              "gap length must lie in (0, 2*pi]");
      g.start = wrap_angle(g.start);
    }
    std::sort(gaps_.begin(), gaps_.end(),
              [](const Gap& a, const Gap& b) { return a.start < b.start; });
    double total = 0.0;
    for (std::size_t i = 0; i < gaps_.size(); ++i) {
      total += gaps_[i].length;
      if (i + 1 < gaps_.size())
        require(gaps_[i].end() <= gaps_[i + 1].start + 1e-12, ErrorKind::InvariantViolation,
                "gaps must be pairwise disjoint");
    }
    if (!gaps_.empty()) {
      // wrap check: last gap against first (shifted by 2*pi)
      require(gaps_.back().end() <= gaps_.front().start + two_pi + 1e-12,
              ErrorKind::InvariantViolation, "gaps must be pairwise disjoint (wrap)");
      require(total <= two_pi + 1e-9, ErrorKind::InvariantViolation,
              "total gap length exceeds the circle");
    }
    lengths_sorted_.clear();
    lengths_sorted_.reserve(gaps_.size());
    for (const Gap& g : gaps_) lengths_sorted_.push_back(g.length);
    std::sort(lengths_sorted_.begin(), lengths_sorted_.end());
    length_suffix_sum_.assign(lengths_sorted_.size() + 1, 0.0);
    for (std::size_t i = lengths_sorted_.size(); i-- > 0;)
      length_suffix_sum_[i] = length_suffix_sum_[i + 1] + lengths_sorted_[i];
    length_hist_.clear();
    for (double len : lengths_sorted_) {
      if (!length_hist_.empty() && std::abs(length_hist_.back().first - len) < 1e-15)
        ++length_hist_.back().second;
      else
        length_hist_.emplace_back(len, 1);
    }
  }

  // Index of the gap whose open interior contains th, if any.
  std::optional<std::size_t> gap_containing(double th) const {
    if (gaps_.empty()) return std::nullopt;
    auto it = std::upper_bound(gaps_.begin(), gaps_.end(), th,
                               [](double x, const Gap& g) { return x < g.start; });
    // candidate: previous gap, or the last gap wrapped
    std::size_t idx = (it == gaps_.begin()) ? gaps_.size() - 1 : (it - gaps_.begin()) - 1;
    const Gap& g = gaps_[idx];
    double local = th;
    if (local < g.start) local += two_pi;
    if (local > g.start + 1e-15 && local < g.end() - 1e-15) return idx;
    return std::nullopt;
  }

  // Smallest point of E at or after angle x (result >= x, unwrapped).
  double next_point_at_or_after(double x) const {
    double th = wrap_angle(x);
    double shift = x - th;
    auto gi = gap_containing(th);
    if (!gi) return x;
    const Gap& g = gaps_[*gi];
    double local = th;
    if (local < g.start) local += two_pi;
    return shift + th + (g.end() - local);
  }

  double next_point_after(double x) const { return next_point_at_or_after(x + 1e-15); }

  std::vector<Gap> gaps_;
  std::vector<double> lengths_sorted_;
  std::vector<double> length_suffix_sum_;
  std::vector<std::pair<double, long>> length_hist_;
};

// ---------------------------------------------------------------------------
// Admissible weights psi and M_{psi,E}
// ---------------------------------------------------------------------------

enum class WeightShape { concave, convex };

/// Increasing weight psi on (0, 2*pi] with psi(0+) = 0, declared concave or
/// convex, and psi(s)/s^alpha nonincreasing.
struct AdmissibleWeight {
  std::function<double(double)> psi;
  WeightShape shape = WeightShape::concave;
  double alpha = 1.0;
  std::string label;

  static AdmissibleWeight power(double coeff, double exponent) {
    require(coeff > 0.0 && exponent > 0.0, ErrorKind::InvalidWeight,
            "power weight needs positive coefficient and exponent");
    AdmissibleWeight w;
    w.psi = [coeff, exponent](double t) { return coeff * std::pow(t, exponent); };
    w.shape = (exponent <= 1.0) ? WeightShape::concave : WeightShape::convex;
    w.alpha = exponent;
    w.label = std::to_string(coeff) + "*t^" + std::to_string(exponent);
    return w;
  }

  /// Sampling checks on a dyadic grid; throws InvalidWeight on failure.
  void validate() const {
    require(static_cast<bool>(psi), ErrorKind::InvalidWeight, "weight is empty");
    require(alpha > 0.0, ErrorKind::InvalidWeight, "alpha must be positive");
    double prev = 0.0;
    bool first = true;
    double prev_ratio = 0.0;
    bool first_ratio = true;
    for (int j = 40; j >= 0; --j) {
      const double t = two_pi * std::pow(0.5, j);
      const double v = psi(t);
      require(v >= 0.0 && std::isfinite(v), ErrorKind::InvalidWeight,
              "weight must be finite and nonnegative");
      if (!first)
        require(v >= prev * (1.0 - 1e-9), ErrorKind::InvalidWeight, "weight must be increasing");
      prev = v;
      first = false;
      const double r = v / std::pow(t, alpha);
      if (!first_ratio)
        require(r <= prev_ratio * (1.0 + 1e-9), ErrorKind::InvalidWeight,
                "psi(s)/s^alpha must be nonincreasing");
      prev_ratio = r;
      first_ratio = false;
    }
    require(psi(two_pi * std::pow(0.5, 40)) <= 1e-6 * std::max(psi(two_pi), 1e-300),
            ErrorKind::InvalidWeight, "weight must vanish at 0");
    // midpoint shape check on a dyadic triple family
    for (int j = 0; j <= 20; ++j) {
      const double a = pi * std::pow(0.5, j + 1), b = pi * std::pow(0.5, j);
      const double mid = psi(0.5 * (a + b)), chord = 0.5 * (psi(a) + psi(b));
      if (shape == WeightShape::concave)
        require(mid >= chord - 1e-9 * std::max(1.0, chord), ErrorKind::InvalidWeight,
                "declared concave but chord lies above the graph");
      else
        require(mid <= chord + 1e-9 * std::max(1.0, chord), ErrorKind::InvalidWeight,
                "declared convex but chord lies below the graph");
    }
  }
};

/// Evaluator of M_{psi,E}(s) = max( int_0^s psi(t)/t N_E(t) dt, psi(s)/s |E_s| )
/// with the gap census integrated exactly over its piecewise-constant segments.
class MPsiEvaluator {
 public:
  MPsiEvaluator(const ClosedSet& e, const AdmissibleWeight& w) : set_(&e), weight_(&w) {
    w.validate();
    // breakpoints of N_E: half gap lengths, ascending
    for (const auto& [len, cnt] : e.length_histogram()) breaks_.push_back(0.5 * len);
    prefix_.assign(breaks_.size() + 1, 0.0);
    // prefix_[k] = integral over (0, breaks_[k-1]] of psi(t)/t * N_E(t) dt
    double acc = 0.0;
    double lo = 0.0;
    for (std::size_t k = 0; k < breaks_.size(); ++k) {
      acc += segment_integral(lo, breaks_[k]);
      prefix_[k + 1] = acc;
      lo = breaks_[k];
    }
  }

  double integral_branch(double s) const {
    if (s <= 0.0) return 0.0;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    const std::size_t k = static_cast<std::size_t>(it - breaks_.begin());
    const double lo = (k == 0) ? 0.0 : breaks_[k - 1];
    return prefix_[k] + segment_integral(lo, s);
  }

  double ratio_branch(double s) const {
    const double et = (s <= pi) ? set_->thickened_length(s) : two_pi;
    return weight_->psi(s) / s * et;
  }

  double operator()(double s) const {
    require(s > 0.0 && s <= two_pi, ErrorKind::PreconditionFailed, "M_{psi,E} needs s in (0, 2*pi]");
    return std::max(integral_branch(s), ratio_branch(s));
  }

 private:
  // integral of psi(t)/t * N_E(t) over (lo, hi] where N_E is constant except
  // possibly at the left end lo = 0 (dyadic refinement handles psi(t)/t there).
  double segment_integral(double lo, double hi) const {
    if (!(hi > lo)) return 0.0;
    const auto& w = *weight_;
    auto f = [this, &w](double t) {
      return w.psi(t) / t * static_cast<double>(set_->n_count(std::min(t, pi)));
    };
    if (lo <= 0.0) {
      // refine toward 0; integrand ~ psi(t)/t with psi(0)=0 is integrable
      double total = 0.0;
      double b = hi;
      for (int j = 0; j < 60 && b > 1e-18; ++j) {
        double a = 0.5 * b;
        total += integrate_gl(f, a, b, 12);
        b = a;
      }
      return total;
    }
    return integrate_gl(f, lo, hi, 12);
  }

  const ClosedSet* set_;
  const AdmissibleWeight* weight_;
  std::vector<double> breaks_;
  std::vector<double> prefix_;
};

inline double m_psi(const ClosedSet& e, const AdmissibleWeight& w, double s) {
  return MPsiEvaluator(e, w)(s);
}

}  // namespace dmu
