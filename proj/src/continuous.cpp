#include "almostconv/continuous.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "almostconv/parallel.hpp"

namespace almostconv {

namespace {

std::vector<double> trapezoid_panels(const SequenceSample& v, double h) {
  const std::size_t d = v.dim();
  const std::size_t cells = v.size() - 1;
  std::vector<double> panels(cells * d);
  for (std::size_t k = 0; k < cells; ++k) {
    auto a = v[k + 1];
    auto b = v[k + 2];
    for (std::size_t c = 0; c < d; ++c) panels[k * d + c] = 0.5 * h * (a[c] + b[c]);
  }
  return panels;
}

SequenceSample checked_values(std::vector<double> rows, std::size_t dim, double step, double bound,
                              NormKind norm) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("step h must be > 0");
  SequenceSample values(std::move(rows), dim, bound, norm);
  if (values.size() < 3) throw std::invalid_argument("sampled function needs K >= 2 intervals");
  return values;
}

}  // namespace

SampledFunction::SampledFunction(std::vector<double> rows, std::size_t dim, double step,
                                 double bound, NormKind norm)
    : step_(step), values_(checked_values(std::move(rows), dim, step, bound, norm)) {
  panels_ = PrefixSums(trapezoid_panels(values_, step_), values_.dim());
}

SampledFunction SampledFunction::sample(const std::function<Vector(double)>& f, double step,
                                        std::size_t intervals, double bound, NormKind norm) {
  std::vector<double> rows;
  std::size_t dim = 0;
  for (std::size_t k = 0; k <= intervals; ++k) {
    const Vector v = f(static_cast<double>(k) * step);
    if (k == 0) {
      dim = v.dim();
      rows.reserve((intervals + 1) * dim);
    }
    require_same_dim(dim, v.dim(), "sampled function value");
    rows.insert(rows.end(), v.components().begin(), v.components().end());
  }
  return SampledFunction(std::move(rows), dim, step, bound, norm);
}

SampledFunction SampledFunction::from_sequence(const SequenceSample& x, double step) {
  return SampledFunction(std::vector<double>(x.rows().begin(), x.rows().end()), x.dim(), step,
                         x.bound(), x.norm_kind());
}

void SampledFunction::cell_integral(std::size_t first, std::size_t last,
                                    std::span<double> out) const {
  panels_.window_sum(first + 1, last, out);
}

std::size_t SampledFunction::grid_index(double t) const {
  if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("time must be finite and >= 0");
  const double q = t / step_;
  const double k = std::round(q);
  if (std::abs(q - k) > 1e-9 * std::max(1.0, k)) {
    throw std::invalid_argument("time " + std::to_string(t) + " is not a multiple of step " +
                                std::to_string(step_));
  }
  return static_cast<std::size_t>(k);
}

namespace {

void check_span(const SampledFunction& f, std::size_t a, std::size_t t) {
  if (t < 1) throw std::invalid_argument("integration duration must be at least one step");
  if (a + t > f.intervals()) throw std::invalid_argument("integration window exceeds the domain");
}

}  // namespace

Vector integral_mean(const SampledFunction& f, double a, double t) {
  const std::size_t ia = f.grid_index(a);
  const std::size_t it = f.grid_index(t);
  check_span(f, ia, it);
  std::vector<double> s(f.dim());
  f.cell_integral(ia, ia + it, s);
  const double len = static_cast<double>(it) * f.step();
  for (double& c : s) c /= len;
  return Vector(std::move(s));
}

double c_cont(const SampledFunction& f, double t) {
  const std::size_t it = f.grid_index(t);
  check_span(f, 0, it);
  const double len = static_cast<double>(it) * f.step();
  return parallel_max(f.intervals() - it + 1, 0.0, [&](std::size_t a) {
    thread_local std::vector<double> s;
    s.resize(f.dim());
    f.cell_integral(a, a + it, s);
    for (double& c : s) c /= len;
    return norm(s, f.norm_kind());
  });
}

SampledFunction subtract_constant(const SampledFunction& f, const Vector& v) {
  require_same_dim(f.dim(), v.dim(), "limit candidate");
  auto src = f.values().rows();
  std::vector<double> rows(src.begin(), src.end());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] -= v[i % f.dim()];
  return SampledFunction(std::move(rows), f.dim(), f.step(), f.bound() + norm(v, f.norm_kind()),
                         f.norm_kind());
}

Vector candidate_limit(const SampledFunction& f) {
  const std::size_t k = f.intervals();
  const std::size_t first = k / 4;
  std::vector<double> s(f.dim());
  f.cell_integral(first, k, s);
  const double len = static_cast<double>(k - first) * f.step();
  for (double& c : s) c /= len;
  return Vector(std::move(s));
}

Verdict check_strong_cont(const SampledFunction& f, const Vector& v, double t,
                          const Thresholds& thresholds) {
  const double r = c_cont(subtract_constant(f, v), t);
  Verdict verdict;
  verdict.mode = VerdictMode::strong;
  verdict.candidate = v;
  verdict.residual = r;
  verdict.tolerance = thresholds.tolerance;
  verdict.divergence_floor = thresholds.floor();
  verdict.window = f.grid_index(t);
  verdict.horizon = f.intervals();
  verdict.status = classify(r, thresholds);
  return verdict;
}

}  // namespace almostconv
