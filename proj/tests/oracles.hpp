#pragma once

// Test-only reference computations. Nothing here touches prefix sums or the
// library's window kernels; each helper works directly from raw values.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double norm(const std::vector<double>& v, int kind) {  // 1, 2, or 0 = inf
  double s = 0.0;
  for (double c : v) {
    if (kind == 1) s += std::abs(c);
    else if (kind == 2) s += c * c;
    else s = std::max(s, std::abs(c));
  }
  return kind == 2 ? std::sqrt(s) : s;
}

/// max over all start positions (stride 1, or stride n when block = true,
/// starting at index n) of ||mean of x_j..x_{j+n-1} - v||, 1-indexed.
inline double window_sup(const Rows& x, std::size_t n, const std::vector<double>& v, int kind,
                         bool block = false) {
  const std::size_t m = x.size();
  double worst = 0.0;
  const std::size_t first = block ? n : 1;
  const std::size_t step = block ? n : 1;
  for (std::size_t j = first; j + n - 1 <= m; j += step) {
    std::vector<double> s(v.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < v.size(); ++c) s[c] += x[j + i - 1][c];
    for (std::size_t c = 0; c < v.size(); ++c) s[c] = s[c] / double(n) - v[c];
    worst = std::max(worst, norm(s, kind));
  }
  return worst;
}

inline Rows alternating(std::size_t m) {
  Rows x;
  for (std::size_t k = 1; k <= m; ++k) x.push_back({k % 2 == 1 ? 1.0 : 0.0});
  return x;
}

/// sum_{i=0}^{n-1} 1 / (i + j)
inline double harmonic_window(std::size_t n, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = n; i-- > 0;) s += 1.0 / double(i + j);
  return s;
}

/// (1/t) int_a^{a+t} sin(s) ds
inline double sin_mean(double a, double t) { return (std::cos(a) - std::cos(a + t)) / t; }

/// Exact integral of the ideal square wave (high on [kT, kT + T/2), low otherwise) over [0, s].
inline double square_wave_primitive(double s, double period, double high, double low) {
  const double whole = std::floor(s / period);
  const double rem = s - whole * period;
  const double half = period / 2.0;
  return whole * half * (high + low) + std::min(rem, half) * high + std::max(0.0, rem - half) * low;
}

inline double square_wave_mean(double a, double t, double period, double high, double low) {
  return (square_wave_primitive(a + t, period, high, low) -
          square_wave_primitive(a, period, high, low)) / t;
}

}  // namespace oracle
