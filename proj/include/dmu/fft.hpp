#pragma once

// Radix-2 complex FFT and real cyclic convolution, used by the capacity
// QP solver for circulant operator application (grid sizes are powers of 2).

#include <cassert>
#include <complex>
#include <vector>

#include "dmu/circle.hpp"

namespace dmu {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_inplace(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  assert(is_power_of_two(n));
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
    const Complex wl = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        Complex u = a[i + k];
        Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv;
  }
}

inline std::vector<Complex> fft_of_real(const std::vector<double>& v) {
  std::vector<Complex> a(v.begin(), v.end());
  fft_inplace(a, false);
  return a;
}

/// Cyclic convolution c_p = sum_j x_j k_{p-j} with a precomputed kernel spectrum.
inline std::vector<double> cyclic_convolve(const std::vector<double>& x,
                                           const std::vector<Complex>& kernel_fft) {
  std::vector<Complex> a(x.begin(), x.end());
  fft_inplace(a, false);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= kernel_fft[i];
  fft_inplace(a, true);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].real();
  return out;
}

}  // namespace dmu
