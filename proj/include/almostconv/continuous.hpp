#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "almostconv/detect.hpp"

namespace almostconv {

/// f(t_0), ..., f(t_K) at t_k = k h for a bounded continuous V-valued f.
///
/// Trapezoid panels h (f_k + f_{k+1}) / 2 are accumulated into compensated
/// prefix sums, so every grid-aligned integral is O(d).
class SampledFunction {
 public:
  SampledFunction(std::vector<double> rows, std::size_t dim, double step, double bound,
                  NormKind norm);

  static SampledFunction sample(const std::function<Vector(double)>& f, double step,
                                std::size_t intervals, double bound, NormKind norm);

  /// Piecewise data x_1..x_M placed at t = 0, h, ..., (M-1)h.
  static SampledFunction from_sequence(const SequenceSample& x, double step = 1.0);

  double step() const { return step_; }
  /// K, the number of grid intervals; the domain is [0, K h].
  std::size_t intervals() const { return values_.size() - 1; }
  std::size_t dim() const { return values_.dim(); }
  double bound() const { return values_.bound(); }
  NormKind norm_kind() const { return values_.norm_kind(); }
  double duration() const { return static_cast<double>(intervals()) * step_; }

  /// f(t_k), 0 <= k <= K.
  std::span<const double> value(std::size_t k) const { return values_[k + 1]; }
  const SequenceSample& values() const { return values_; }

  /// Trapezoid integral over grid cells [first, last), written into out.
  void cell_integral(std::size_t first, std::size_t last, std::span<double> out) const;

  /// Grid index of time t; throws if t is not a grid point within tolerance.
  std::size_t grid_index(double t) const;

 private:
  double step_;
  SequenceSample values_;
  PrefixSums panels_;
};

/// (1/t) int_a^{a+t} f(s) ds by composite trapezoid; a, t grid multiples.
Vector integral_mean(const SampledFunction& f, double a, double t);

/// max over grid offsets a with a + t <= K h of ||integral_mean(f, a, t)||.
double c_cont(const SampledFunction& f, double t);

/// f - v with bound B + ||v||.
SampledFunction subtract_constant(const SampledFunction& f, const Vector& v);

/// Integral mean over the last 3/4 of the domain (grid aligned).
Vector candidate_limit(const SampledFunction& f);

/// Residual c_cont(f - v, t). The window field of the verdict is t / h.
Verdict check_strong_cont(const SampledFunction& f, const Vector& v, double t,
                          const Thresholds& thresholds);

}  // namespace almostconv
