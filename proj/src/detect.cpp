#include "almostconv/detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "almostconv/hull.hpp"
#include "almostconv/rng.hpp"

namespace almostconv {

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::converges: return "converges";
    case VerdictStatus::diverges: return "diverges";
    case VerdictStatus::inconclusive: break;
  }
  return "inconclusive";
}

std::string_view to_string(VerdictMode mode) {
  switch (mode) {
    case VerdictMode::strong: return "strong";
    case VerdictMode::quasi: return "quasi";
    case VerdictMode::weak: break;
  }
  return "weak";
}

VerdictStatus classify(double residual, const Thresholds& thresholds) {
  if (residual < thresholds.tolerance) return VerdictStatus::converges;
  if (residual >= thresholds.floor()) return VerdictStatus::diverges;
  return VerdictStatus::inconclusive;
}

Vector candidate_limit(const SequenceSample& x, bool discard_head) {
  if (x.size() < 4) throw std::invalid_argument("candidate limit needs at least 4 samples");
  const std::size_t kept = discard_head ? (3 * x.size() + 3) / 4 : x.size();
  const std::size_t first = x.size() - kept + 1;
  std::vector<double> s(x.dim());
  x.prefix_sums().window_sum(first, x.size(), s);
  for (double& c : s) c /= static_cast<double>(kept);
  return Vector(std::move(s));
}

namespace {

void check_thresholds(const Thresholds& t) {
  if (!(t.tolerance > 0.0) || !(t.floor() >= t.tolerance)) {
    throw std::invalid_argument("need tolerance > 0 and divergence floor >= tolerance");
  }
}

Verdict make_verdict(VerdictMode mode, const SequenceSample& x, const Vector& v,
                     std::size_t window, double residual, const Thresholds& t) {
  Verdict verdict;
  verdict.mode = mode;
  verdict.candidate = v;
  verdict.residual = residual;
  verdict.tolerance = t.tolerance;
  verdict.divergence_floor = t.floor();
  verdict.window = window;
  verdict.horizon = x.size();
  verdict.status = classify(residual, t);
  return verdict;
}

}  // namespace

Verdict check_strong(const SequenceSample& x, const Vector& v, std::size_t window,
                     const Thresholds& thresholds) {
  require_same_dim(x.dim(), v.dim(), "limit candidate");
  check_thresholds(thresholds);
  if (window < 1 || window > max_estimator_window(x)) {
    throw std::invalid_argument("window N=" + std::to_string(window) + " outside 1..floor(M/2)");
  }
  // c_N alone; the rest of the curve is not needed for the residual
  const double r = c_sliding(subtract_constant(x, v), window);
  return make_verdict(VerdictMode::strong, x, v, window, r, thresholds);
}

Verdict check_quasi(const SequenceSample& x, const Vector& v, std::size_t window,
                    const Thresholds& thresholds) {
  require_same_dim(x.dim(), v.dim(), "limit candidate");
  check_thresholds(thresholds);
  const double r = estimate_q(subtract_constant(x, v), window).tail_max;
  return make_verdict(VerdictMode::quasi, x, v, window, r, thresholds);
}

ProbeSet::ProbeSet(std::vector<Vector> functionals, NormKind norm)
    : functionals_(std::move(functionals)), norm_(norm) {
  if (functionals_.empty()) throw std::invalid_argument("probe set must be nonempty");
  const NormKind dual = dual_of(norm_);
  const std::size_t d = functionals_.front().dim();
  for (auto& f : functionals_) {
    require_same_dim(d, f.dim(), "probe");
    const double dn = almostconv::norm(f, dual);
    if (dn == 0.0) throw std::invalid_argument("zero functional in probe set");
    f *= 1.0 / dn;
  }
}

ProbeSet ProbeSet::coordinates(std::size_t dim, NormKind norm) {
  std::vector<Vector> fs;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1.0;
    fs.emplace_back(std::move(e));
  }
  return ProbeSet(std::move(fs), norm);
}

ProbeSet ProbeSet::with_random(std::size_t dim, NormKind norm, std::uint64_t seed,
                               std::size_t extra) {
  std::vector<Vector> fs = coordinates(dim, norm).functionals();
  SplitMix64 rng(seed);
  while (extra > 0) {
    std::vector<double> f(dim);
    for (double& c : f) c = rng.symmetric();
    if (almostconv::norm(f, NormKind::linf) < 1e-3) continue;
    fs.emplace_back(std::move(f));
    --extra;
  }
  return ProbeSet(std::move(fs), norm);
}

double ProbeSet::max_observed_ratio(std::uint64_t seed, std::size_t trials) const {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> v(dim());
    for (double& c : v) c = rng.symmetric();
    const double nv = almostconv::norm(v, norm_);
    if (nv == 0.0) continue;
    for (const auto& f : functionals_) worst = std::max(worst, std::abs(pair(f, v)) / nv);
  }
  return worst;
}

Verdict check_weak(const SequenceSample& x, const Vector& v, const ProbeSet& probes,
                   std::size_t window, const Thresholds& thresholds) {
  require_same_dim(x.dim(), v.dim(), "limit candidate");
  require_same_dim(x.dim(), probes.dim(), "probe set");
  if (probes.norm_kind() != x.norm_kind()) {
    throw std::invalid_argument("probe set was normalised for a different norm");
  }
  double r = 0.0;
  for (const auto& f : probes.functionals()) {
    std::vector<double> values(x.size());
    for (std::size_t k = 1; k <= x.size(); ++k) values[k - 1] = pair(f, x[k]);
    // unit dual norm: |f(x_n)| <= ||x_n|| <= B
    const SequenceSample scalar(std::move(values), 1, x.bound(), NormKind::l2);
    const Vector fv{pair(f, v.components())};
    r = std::max(r, check_strong(scalar, fv, window, thresholds).residual);
  }
  return make_verdict(VerdictMode::weak, x, v, window, r, thresholds);
}

std::vector<std::size_t> sa_cauchy_grid(std::size_t threshold, std::size_t max_window,
                                        std::size_t max_points) {
  std::vector<std::size_t> grid;
  const std::size_t lo = threshold + 1;
  if (max_window < lo || max_points == 0) return grid;
  if (max_window - lo + 1 <= max_points) {
    for (std::size_t n = lo; n <= max_window; ++n) grid.push_back(n);
    return grid;
  }
  const double ratio = static_cast<double>(max_window) / static_cast<double>(lo);
  for (std::size_t k = 0; k < max_points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(max_points - 1);
    auto n = static_cast<std::size_t>(std::llround(static_cast<double>(lo) * std::pow(ratio, t)));
    n = std::clamp(n, lo, max_window);
    if (grid.empty() || n > grid.back()) grid.push_back(n);
  }
  return grid;
}

SaCauchyResult sa_cauchy_check(const SequenceSample& x, std::size_t threshold, double eps) {
  if (2 * threshold >= x.size()) throw std::invalid_argument("s.a.-Cauchy threshold must be < M/2");
  SaCauchyResult result;
  result.grid = sa_cauchy_grid(threshold, x.size() / 2);
  const std::size_t d = x.dim();
  std::vector<double> a(d), b(d);
  for (std::size_t p = 0; p < result.grid.size(); ++p) {
    for (std::size_t q = p + 1; q < result.grid.size(); ++q) {
      const std::size_t n = result.grid[p], m = result.grid[q];
      for (std::size_t j = 1; j + m - 1 <= x.size(); ++j) {
        x.prefix_sums().window_sum(j, j + n - 1, a);
        x.prefix_sums().window_sum(j, j + m - 1, b);
        for (std::size_t c = 0; c < d; ++c) {
          a[c] = a[c] / static_cast<double>(n) - b[c] / static_cast<double>(m);
        }
        const double gap = norm(a, x.norm_kind());
        if (gap > result.worst_gap) {
          result.worst_gap = gap;
          result.n = n;
          result.m = m;
          result.j = j;
        }
      }
    }
  }
  result.cauchy = result.worst_gap < eps;
  return result;
}

double convex_hull_audit(const SequenceSample& x, const Vector& v) {
  require_same_dim(x.dim(), v.dim(), "hull query");
  if (x.dim() == 1) {
    double lo = x[1][0], hi = x[1][0];
    for (std::size_t k = 2; k <= x.size(); ++k) {
      lo = std::min(lo, x[k][0]);
      hi = std::max(hi, x[k][0]);
    }
    return std::max({0.0, lo - v[0], v[0] - hi});
  }
  if (x.dim() != 2) throw std::invalid_argument("convex hull audit supports dimension 1 or 2 only");
  std::vector<Point2> pts;
  pts.reserve(x.size());
  for (std::size_t k = 1; k <= x.size(); ++k) pts.push_back({x[k][0], x[k][1]});
  const auto hull = convex_hull(std::move(pts));
  return distance_to_hull(hull, {v[0], v[1]});
}

double induced_functional(const Vector& probe, const Vector& limit) {
  return pair(probe, limit.components());
}

InducedAudit audit_induced_functional(const Vector& probe, NormKind norm, const SequenceSample& x,
                                      const Vector& limit, std::size_t window) {
  if (almostconv::norm(probe, dual_of(norm)) > 1.0 + 1e-12) {
    throw std::invalid_argument("induced functional needs a probe with dual norm <= 1");
  }
  InducedAudit audit;
  audit.value = induced_functional(probe, limit);
  audit.p_estimate = estimate_p(x.with_norm(norm), window).c_at_N;
  audit.slack = audit.p_estimate - std::abs(audit.value);
  return audit;
}

}  // namespace almostconv
