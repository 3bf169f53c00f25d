#include "almostconv/vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace almostconv {

NormKind parse_norm(std::string_view name) {
  if (name == "l1") return NormKind::l1;
  if (name == "l2") return NormKind::l2;
  if (name == "linf") return NormKind::linf;
  throw std::invalid_argument("unknown norm '" + std::string(name) + "' (expected l1, l2 or linf)");
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::l1: return "l1";
    case NormKind::l2: return "l2";
    case NormKind::linf: return "linf";
  }
  return "?";
}

NormKind dual_of(NormKind kind) {
  switch (kind) {
    case NormKind::l1: return NormKind::linf;
    case NormKind::linf: return NormKind::l1;
    case NormKind::l2: break;
  }
  return NormKind::l2;
}

double equivalence_constant(NormKind from, NormKind to, std::size_t dim) {
  // ||v||_inf <= ||v||_2 <= ||v||_1 <= sqrt(d) ||v||_2 <= d ||v||_inf
  auto rank = [](NormKind k) { return k == NormKind::linf ? 0 : k == NormKind::l2 ? 1 : 2; };
  const int lo = rank(from), hi = rank(to);
  if (hi <= lo) return 1.0;
  const double d = static_cast<double>(dim);
  if (lo == 0 && hi == 2) return d;
  return std::sqrt(d);
}

double norm(std::span<const double> v, NormKind kind) {
  if (v.empty()) throw std::invalid_argument("norm of a zero-dimensional vector");
  switch (kind) {
    case NormKind::l1: {
      double s = 0.0;
      for (double c : v) s += std::abs(c);
      return s;
    }
    case NormKind::linf: {
      double m = 0.0;
      for (double c : v) m = std::max(m, std::abs(c));
      return m;
    }
    case NormKind::l2: break;
  }
  if (v.size() == 1) return std::abs(v[0]);
  if (v.size() == 2) return std::hypot(v[0], v[1]);
  // scaled to avoid overflow for large components
  double scale = 0.0;
  for (double c : v) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double c : v) {
    const double r = c / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

Vector::Vector(std::vector<double> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("vector dimension must be at least 1");
  for (double c : components_) {
    if (!std::isfinite(c)) throw std::invalid_argument("vector component is not finite");
  }
}

Vector::Vector(std::initializer_list<double> components)
    : Vector(std::vector<double>(components)) {}

Vector Vector::zero(std::size_t dim) { return Vector(std::vector<double>(dim, 0.0)); }

Vector Vector::from_complex(std::span<const std::complex<double>> z) {
  std::vector<double> c;
  c.reserve(2 * z.size());
  for (const auto& w : z) {
    c.push_back(w.real());
    c.push_back(w.imag());
  }
  return Vector(std::move(c));
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(dim(), other.dim(), "vector addition");
  for (std::size_t i = 0; i < dim(); ++i) components_[i] += other.components_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(dim(), other.dim(), "vector subtraction");
  for (std::size_t i = 0; i < dim(); ++i) components_[i] -= other.components_[i];
  return *this;
}

Vector& Vector::operator*=(double scale) {
  for (double& c : components_) c *= scale;
  return *this;
}

double pair(const Vector& functional, std::span<const double> v) {
  require_same_dim(functional.dim(), v.size(), "dual pairing");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += functional[i] * v[i];
  return s;
}

void require_same_dim(std::size_t expected, std::size_t actual, std::string_view what) {
  if (expected != actual) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(expected) + " vs " + std::to_string(actual) + ")");
  }
}

}  // namespace almostconv
