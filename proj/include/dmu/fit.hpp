#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace dmu {

/// Least-squares power-law fit y = coeff * x^exponent on positive samples.
struct PowerFit {
  double exponent = 0.0;
  double coeff = 0.0;
  double residual = 0.0;  // rms residual of log y
  int used = 0;
};

inline PowerFit power_law_fit(const std::vector<double>& x, const std::vector<double>& y) {
  PowerFit fit;
  double sx = 0, sy = 0, sxy = 0, sxx = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const int m = static_cast<int>(lx.size());
  fit.used = m;
  if (m < 2) return fit;
  for (int i = 0; i < m; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxy += lx[i] * ly[i];
    sxx += lx[i] * lx[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return fit;
  fit.exponent = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / m;
  fit.coeff = std::exp(intercept);
  double ss = 0.0;
  for (int i = 0; i < m; ++i) {
    double r = ly[i] - (intercept + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

}  // namespace dmu
