#include "almostconv/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace almostconv {

namespace {

// Knuth's error-free transformation: a + b == s + e exactly.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

// Bound checks allow a few ulps so that analytically tight bounds survive
// rounding in the norm evaluation.
constexpr double kBoundSlack = 1e-12;

void check_bound(double norm_value, double bound, std::size_t k) {
  if (norm_value > bound * (1.0 + kBoundSlack)) {
    throw std::invalid_argument("sample " + std::to_string(k) + " has norm " +
                                std::to_string(norm_value) + " exceeding declared bound " +
                                std::to_string(bound));
  }
}

}  // namespace

PrefixSums::PrefixSums(std::span<const double> rows, std::size_t dim)
    : dim_(dim), count_(dim == 0 ? 0 : rows.size() / dim) {
  hi_.assign((count_ + 1) * dim_, 0.0);
  lo_.assign((count_ + 1) * dim_, 0.0);
  for (std::size_t k = 1; k <= count_; ++k) {
    for (std::size_t c = 0; c < dim_; ++c) {
      const std::size_t prev = (k - 1) * dim_ + c;
      const std::size_t cur = k * dim_ + c;
      double s, e;
      two_sum(hi_[prev], rows[(k - 1) * dim_ + c], s, e);
      e += lo_[prev];
      two_sum(s, e, hi_[cur], lo_[cur]);
    }
  }
}

void PrefixSums::window_sum(std::size_t first, std::size_t last, std::span<double> out) const {
  const std::size_t a = (first - 1) * dim_;
  const std::size_t b = last * dim_;
  for (std::size_t c = 0; c < dim_; ++c) {
    out[c] = (hi_[b + c] - hi_[a + c]) + (lo_[b + c] - lo_[a + c]);
  }
}

Vector PrefixSums::prefix(std::size_t k) const {
  if (k > count_) throw std::out_of_range("prefix index beyond horizon");
  std::vector<double> p(dim_);
  for (std::size_t c = 0; c < dim_; ++c) p[c] = hi_[k * dim_ + c] + lo_[k * dim_ + c];
  return Vector(std::move(p));
}

SequenceSample::SequenceSample(std::vector<double> rows, std::size_t dim, double bound,
                               NormKind norm)
    : dim_(dim), size_(0), bound_(bound), norm_(norm), rows_(std::move(rows)) {
  if (dim_ == 0) throw std::invalid_argument("sequence dimension must be at least 1");
  if (rows_.empty()) throw std::invalid_argument("sequence must contain at least one sample");
  if (rows_.size() % dim_ != 0) throw std::invalid_argument("ragged sequence data");
  if (!std::isfinite(bound_) || bound_ < 0.0) {
    throw std::invalid_argument("declared bound must be finite and nonnegative");
  }
  size_ = rows_.size() / dim_;
  for (double c : rows_) {
    if (!std::isfinite(c)) throw std::invalid_argument("sequence sample is not finite");
  }
  for (std::size_t k = 1; k <= size_; ++k) check_bound(almostconv::norm((*this)[k], norm_), bound_, k);
  prefix_ = PrefixSums(rows_, dim_);
}

namespace {

std::vector<double> flatten(const std::vector<Vector>& samples) {
  if (samples.empty()) throw std::invalid_argument("sequence must contain at least one sample");
  const std::size_t d = samples.front().dim();
  std::vector<double> rows;
  rows.reserve(samples.size() * d);
  for (const auto& v : samples) {
    require_same_dim(d, v.dim(), "sequence sample");
    rows.insert(rows.end(), v.components().begin(), v.components().end());
  }
  return rows;
}

}  // namespace

SequenceSample::SequenceSample(const std::vector<Vector>& samples, double bound, NormKind norm)
    : SequenceSample(flatten(samples), samples.empty() ? 1 : samples.front().dim(), bound, norm) {}

std::span<const double> SequenceSample::operator[](std::size_t k) const {
  return std::span<const double>(rows_).subspan((k - 1) * dim_, dim_);
}

Vector SequenceSample::at(std::size_t k) const {
  if (k < 1 || k > size_) throw std::out_of_range("sample index outside 1..M");
  auto row = (*this)[k];
  return Vector(std::vector<double>(row.begin(), row.end()));
}

SequenceSample SequenceSample::with_norm(NormKind norm) const {
  if (norm == norm_) return *this;
  return SequenceSample(rows_, dim_, bound_ * equivalence_constant(norm_, norm, dim_), norm);
}

double sup_norm(const SequenceSample& x) {
  double m = 0.0;
  for (std::size_t k = 1; k <= x.size(); ++k) m = std::max(m, norm(x[k], x.norm_kind()));
  return m;
}

SequenceSample shift(const SequenceSample& x, std::size_t k) {
  if (k >= x.size()) throw std::invalid_argument("shift must leave at least one sample");
  auto rows = x.rows().subspan(k * x.dim());
  return SequenceSample(std::vector<double>(rows.begin(), rows.end()), x.dim(), x.bound(),
                        x.norm_kind());
}

SequenceSample constant_sequence(const Vector& v, std::size_t length, NormKind norm) {
  if (length == 0) throw std::invalid_argument("constant sequence needs length >= 1");
  std::vector<double> rows;
  rows.reserve(length * v.dim());
  for (std::size_t k = 0; k < length; ++k) {
    rows.insert(rows.end(), v.components().begin(), v.components().end());
  }
  return SequenceSample(std::move(rows), v.dim(), almostconv::norm(v, norm), norm);
}

SequenceSample subsequence(const SequenceSample& x, std::size_t offset, std::size_t stride) {
  if (offset < 1 || offset > x.size() || stride == 0) {
    throw std::invalid_argument("subsequence needs 1 <= offset <= M and stride >= 1");
  }
  std::vector<double> rows;
  for (std::size_t k = offset; k <= x.size(); k += stride) {
    auto row = x[k];
    rows.insert(rows.end(), row.begin(), row.end());
  }
  return SequenceSample(std::move(rows), x.dim(), x.bound(), x.norm_kind());
}

namespace {

void check_window(const SequenceSample& x, std::size_t n, std::size_t j) {
  if (n < 1 || j < 1 || j + n - 1 > x.size()) {
    throw std::invalid_argument("window (n=" + std::to_string(n) + ", j=" + std::to_string(j) +
                                ") does not fit horizon M=" + std::to_string(x.size()));
  }
}

}  // namespace

Vector sliding_mean(const SequenceSample& x, std::size_t n, std::size_t j) {
  check_window(x, n, j);
  std::vector<double> s(x.dim());
  x.prefix_sums().window_sum(j, j + n - 1, s);
  for (double& c : s) c /= static_cast<double>(n);
  return Vector(std::move(s));
}

Vector naive_window_sum(const SequenceSample& x, std::size_t n, std::size_t j) {
  check_window(x, n, j);
  std::vector<double> s(x.dim(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = x[i + j];
    for (std::size_t c = 0; c < s.size(); ++c) s[c] += row[c];
  }
  return Vector(std::move(s));
}

SequenceSample combine(double a, const SequenceSample& x, double b, const SequenceSample& y) {
  require_same_dim(x.dim(), y.dim(), "sequence combination");
  if (x.norm_kind() != y.norm_kind()) throw std::invalid_argument("sequences use different norms");
  const std::size_t m = std::min(x.size(), y.size());
  std::vector<double> rows(m * x.dim());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = a * x.rows()[i] + b * y.rows()[i];
  return SequenceSample(std::move(rows), x.dim(),
                        std::abs(a) * x.bound() + std::abs(b) * y.bound(), x.norm_kind());
}

SequenceSample subtract_constant(const SequenceSample& x, const Vector& v) {
  require_same_dim(x.dim(), v.dim(), "limit candidate");
  std::vector<double> rows(x.rows().begin(), x.rows().end());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] -= v[i % x.dim()];
  return SequenceSample(std::move(rows), x.dim(), x.bound() + norm(v, x.norm_kind()),
                        x.norm_kind());
}

SequenceSample shift_difference(const SequenceSample& x) {
  if (x.size() < 2) throw std::invalid_argument("Tx - x needs at least two samples");
  const std::size_t d = x.dim();
  std::vector<double> rows((x.size() - 1) * d);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = x.rows()[i + d] - x.rows()[i];
  return SequenceSample(std::move(rows), d, 2.0 * x.bound(), x.norm_kind());
}

}  // namespace almostconv
