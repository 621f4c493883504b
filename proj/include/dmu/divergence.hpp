#pragma once

// Shared finite-evidence classifier for improper-integral traces T(j)
// sampled at cutoffs 2^-j. The classification rule is deliberately fixed:
//   divergent   - the last window of increments stays above delta
//   convergent  - increments decay geometrically (ratio <= 0.7) and the
//                 extrapolated tail is below 1e-3 of the trace value
//   inconclusive otherwise.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace dmu {

enum class Trend { divergent, convergent, inconclusive };

inline const char* trend_name(Trend t) {
  switch (t) {
    case Trend::divergent: return "divergent";
    case Trend::convergent: return "convergent";
    case Trend::inconclusive: return "inconclusive";
  }
  return "?";
}

struct TraceClassification {
  Trend trend = Trend::inconclusive;
  double limit_estimate = 0.0;   // trace value + geometric tail (convergent case)
  double growth_exponent = 0.0;  // log2-slope of increments (divergent case); 0 = linear growth
  double tail_bound = 0.0;
  double min_increment = 0.0;
  double max_ratio = 0.0;
};

struct DivergenceDetector {
  double min_increment_delta = 1e-3;  // divergent: all window increments >= delta
  double geometric_ratio = 0.7;       // convergent: increment ratios <= this
  double tail_fraction = 1e-3;        // convergent: tail < fraction * T
  int window = 8;

  TraceClassification classify(const std::vector<double>& trace) const {
    TraceClassification out;
    if (trace.size() < static_cast<std::size_t>(window + 1)) return out;
    std::vector<double> inc;
    for (std::size_t i = trace.size() - window; i < trace.size(); ++i)
      inc.push_back(trace[i] - trace[i - 1]);
    double lo = inc[0], hi = inc[0];
    for (double d : inc) {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    out.min_increment = lo;
    const double last = trace.back();

    if (lo >= min_increment_delta) {
      out.trend = Trend::divergent;
      // Least-squares slope of log2 increments vs j over the window.
      double sx = 0, sy = 0, sxy = 0, sxx = 0;
      int m = 0;
      for (std::size_t i = 0; i < inc.size(); ++i) {
        if (inc[i] <= 0) continue;
        double x = static_cast<double>(i), y = std::log2(inc[i]);
        sx += x, sy += y, sxy += x * y, sxx += x * x;
        ++m;
      }
      if (m >= 2) out.growth_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
      out.limit_estimate = last;
      return out;
    }

    const double scale = std::max(std::abs(last), 1e-300);
    double qmax = 0.0;
    bool geometric = true;
    for (std::size_t i = 1; i < inc.size(); ++i) {
      double prev = std::abs(inc[i - 1]), cur = std::abs(inc[i]);
      if (prev < 1e-15 * scale) {
        if (cur > 1e-14 * scale) geometric = false;
        continue;
      }
      double q = cur / prev;
      qmax = std::max(qmax, q);
      if (q > geometric_ratio) geometric = false;
    }
    out.max_ratio = qmax;
    if (geometric) {
      double tail = (qmax < 1.0) ? std::abs(inc.back()) * qmax / (1.0 - qmax) : scale;
      out.tail_bound = tail;
      if (tail < tail_fraction * scale) {
        out.trend = Trend::convergent;
        out.limit_estimate = last + tail;
        return out;
      }
    }
    out.trend = Trend::inconclusive;
    out.limit_estimate = last;
    return out;
  }
};

}  // namespace dmu
