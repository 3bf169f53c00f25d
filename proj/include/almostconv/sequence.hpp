#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "almostconv/vector.hpp"

namespace almostconv {

/// Running sums P_0 = 0, P_k = P_{k-1} + x_k of a row-major block of vectors,
/// kept as unevaluated double-double pairs (hi + lo) per component.
///
/// Window sums are differences of two prefixes; carrying the low word keeps
/// their error proportional to the window sum itself rather than to |P_k|.
class PrefixSums {
 public:
  PrefixSums() = default;
  PrefixSums(std::span<const double> rows, std::size_t dim);

  std::size_t dim() const { return dim_; }
  /// Number of summed rows M; prefixes are indexed 0..M.
  std::size_t count() const { return count_; }

  /// Writes sum_{k=first}^{last} x_k into `out` (1-indexed, inclusive).
  void window_sum(std::size_t first, std::size_t last, std::span<double> out) const;
  /// Best double approximation of P_k.
  Vector prefix(std::size_t k) const;

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> hi_;
  std::vector<double> lo_;
};

/// Finite truncation x_1..x_M of a bounded V-valued sequence.
///
/// The declared bound B is checked against every sample on construction.
/// Indexing is 1-based throughout to match x_1, x_2, ...
class SequenceSample {
 public:
  SequenceSample(std::vector<double> rows, std::size_t dim, double bound, NormKind norm);
  SequenceSample(const std::vector<Vector>& samples, double bound, NormKind norm);

  std::size_t size() const { return size_; }
  std::size_t dim() const { return dim_; }
  double bound() const { return bound_; }
  NormKind norm_kind() const { return norm_; }

  /// x_k for 1 <= k <= M.
  std::span<const double> operator[](std::size_t k) const;
  Vector at(std::size_t k) const;
  std::span<const double> rows() const { return rows_; }
  const PrefixSums& prefix_sums() const { return prefix_; }

  /// Same samples measured in another norm; B is rescaled by the
  /// norm-equivalence constant so the bound stays valid.
  SequenceSample with_norm(NormKind norm) const;

 private:
  std::size_t dim_;
  std::size_t size_;
  double bound_;
  NormKind norm_;
  std::vector<double> rows_;
  PrefixSums prefix_;
};

double sup_norm(const SequenceSample& x);

/// T^k x = x_{k+1}..x_M, keeping B.
SequenceSample shift(const SequenceSample& x, std::size_t k);

SequenceSample constant_sequence(const Vector& v, std::size_t length, NormKind norm);

/// x_{offset}, x_{offset+stride}, ... (offset is 1-based).
SequenceSample subsequence(const SequenceSample& x, std::size_t offset, std::size_t stride);

/// (1/n) sum_{i=0}^{n-1} x_{i+j} from prefix sums.
Vector sliding_mean(const SequenceSample& x, std::size_t n, std::size_t j);

/// Left-to-right sum of x_j..x_{j+n-1}; the reference path for window sums.
Vector naive_window_sum(const SequenceSample& x, std::size_t n, std::size_t j);

/// Termwise a*x + b*y on the common length, bound |a|Bx + |b|By.
SequenceSample combine(double a, const SequenceSample& x, double b, const SequenceSample& y);

/// x - v~ with bound B + ||v||.
SequenceSample subtract_constant(const SequenceSample& x, const Vector& v);

/// Tx - x, i.e. y_k = x_{k+1} - x_k for k = 1..M-1, bound 2B.
SequenceSample shift_difference(const SequenceSample& x);

}  // namespace almostconv
