#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace almostconv {

/// Norm carried by the ambient space V = R^d.
enum class NormKind { l1, l2, linf };

NormKind parse_norm(std::string_view name);
std::string_view to_string(NormKind kind);

/// Norm whose unit ball is the polar of `kind`'s: l1 <-> linf, l2 <-> l2.
NormKind dual_of(NormKind kind);

/// Smallest c with ||v||_to <= c * ||v||_from for every v in R^dim.
double equivalence_constant(NormKind from, NormKind to, std::size_t dim);

double norm(std::span<const double> v, NormKind kind);

/// A point of V. Always nonempty with finite components.
///
/// Complex vectors are stored as interleaved (re, im) pairs, so the l2 norm
/// of the real representation equals the Hermitian norm of the original.
class Vector {
 public:
  explicit Vector(std::vector<double> components);
  Vector(std::initializer_list<double> components);

  static Vector zero(std::size_t dim);
  static Vector from_complex(std::span<const std::complex<double>> z);

  std::size_t dim() const { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }
  std::span<const double> components() const { return components_; }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double scale);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> components_;
};

inline double norm(const Vector& v, NormKind kind) { return norm(v.components(), kind); }

/// Dual pairing <f, v> = sum_i f_i v_i.
double pair(const Vector& functional, std::span<const double> v);

void require_same_dim(std::size_t expected, std::size_t actual, std::string_view what);

}  // namespace almostconv
