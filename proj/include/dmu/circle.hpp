#pragma once

// Geometry of the unit circle: angles live in (-pi, pi], arcs wrap mod 2*pi.

#include <cmath>
#include <complex>
#include <numbers>

namespace dmu {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

using Complex = std::complex<double>;

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double theta) {
  double w = std::remainder(theta, two_pi);
  if (w <= -pi) w = pi;
  return w;
}

/// Distance between two angles along the circle, in [0, pi].
inline double angle_distance(double a, double b) {
  return std::abs(std::remainder(a - b, two_pi));
}

inline Complex unit(double theta) { return std::polar(1.0, theta); }

/// Closed arc {e^{i t} : |t - center| <= half} with half-length in [0, pi].
struct Arc {
  double center = 0.0;
  double half = 0.0;

  static Arc from_endpoints(double lo, double hi) {
    // lo -> hi counterclockwise, hi - lo in [0, 2*pi]
    return Arc{wrap_angle(0.5 * (lo + hi)), 0.5 * (hi - lo)};
  }

  double length() const { return 2.0 * half; }
  bool is_full_circle() const { return half >= pi; }
  bool contains(double theta) const {
    if (is_full_circle()) return true;
    return angle_distance(theta, center) <= half + 1e-15;
  }
  double lo() const { return center - half; }
  double hi() const { return center + half; }
};

}  // namespace dmu
