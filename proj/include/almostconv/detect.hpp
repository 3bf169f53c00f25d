#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "almostconv/seminorms.hpp"

namespace almostconv {

enum class VerdictStatus { converges, diverges, inconclusive };
enum class VerdictMode { strong, quasi, weak };

std::string_view to_string(VerdictStatus status);
std::string_view to_string(VerdictMode mode);

/// Finite-horizon decision for one candidate limit.
///
/// status is converges iff residual < tolerance, diverges iff
/// residual >= divergence_floor, and inconclusive in between.
struct Verdict {
  VerdictStatus status = VerdictStatus::inconclusive;
  Vector candidate = Vector::zero(1);
  double residual = 0.0;
  double tolerance = 0.0;
  double divergence_floor = 0.0;
  std::size_t window = 0;
  std::size_t horizon = 0;
  VerdictMode mode = VerdictMode::strong;
};

struct Thresholds {
  double tolerance = 1e-3;
  /// Unset means 10 * tolerance.
  std::optional<double> divergence_floor;

  double floor() const { return divergence_floor.value_or(10.0 * tolerance); }
};

VerdictStatus classify(double residual, const Thresholds& thresholds);

/// Grand Cesàro mean of the last ceil(3M/4) samples; with discard_head = false
/// the plain mean of all M samples.
Vector candidate_limit(const SequenceSample& x, bool discard_head = true);

/// Residual = c_N(x - v~) = max_j ||sliding_mean(x, N, j) - v||.
Verdict check_strong(const SequenceSample& x, const Vector& v, std::size_t window,
                     const Thresholds& thresholds);

/// Residual = tail max of the block curve of x - v~ over [ceil(N/2), N].
Verdict check_quasi(const SequenceSample& x, const Vector& v, std::size_t window,
                    const Thresholds& thresholds);

/// Bounded linear functionals on V, each normalised to unit dual norm so that
/// |f(v)| <= ||v|| for every v.
class ProbeSet {
 public:
  ProbeSet(std::vector<Vector> functionals, NormKind norm);

  /// e_1..e_d.
  static ProbeSet coordinates(std::size_t dim, NormKind norm);
  /// Coordinates plus `extra` seeded random directions.
  static ProbeSet with_random(std::size_t dim, NormKind norm, std::uint64_t seed,
                              std::size_t extra = 8);

  const std::vector<Vector>& functionals() const { return functionals_; }
  NormKind norm_kind() const { return norm_; }
  std::size_t dim() const { return functionals_.front().dim(); }
  std::size_t size() const { return functionals_.size(); }

  /// Largest |f(v)| / ||v|| over `trials` seeded random v; <= 1 up to rounding.
  double max_observed_ratio(std::uint64_t seed, std::size_t trials = 100) const;

 private:
  std::vector<Vector> functionals_;
  NormKind norm_;
};

/// Residual = max over probes f of the scalar strong residual of {f(x_n)} against f(v).
Verdict check_weak(const SequenceSample& x, const Vector& v, const ProbeSet& probes,
                   std::size_t window, const Thresholds& thresholds);

struct SaCauchyResult {
  bool cauchy = true;
  double worst_gap = 0.0;
  std::size_t n = 0, m = 0, j = 0;  // location of worst_gap
  std::vector<std::size_t> grid;
};

/// At most 32 log-spaced window lengths in (threshold, M/2]; every pair and
/// every start j fitting both windows must satisfy
/// ||sliding_mean(x,n,j) - sliding_mean(x,m,j)|| < eps.
SaCauchyResult sa_cauchy_check(const SequenceSample& x, std::size_t threshold, double eps);

/// Window lengths used by sa_cauchy_check.
std::vector<std::size_t> sa_cauchy_grid(std::size_t threshold, std::size_t max_window,
                                        std::size_t max_points = 32);

/// Euclidean distance from v to the convex hull of the samples (d = 1 or 2).
double convex_hull_audit(const SequenceSample& x, const Vector& v);

/// L_f on a convergent sample: f(lim x_n).
double induced_functional(const Vector& probe, const Vector& limit);

struct InducedAudit {
  double value = 0.0;       // f(v)
  double p_estimate = 0.0;  // c_N(x)
  double slack = 0.0;       // p_estimate - |value|; negative means |L_f(x)| exceeded the estimate
};

InducedAudit audit_induced_functional(const Vector& probe, NormKind norm, const SequenceSample& x,
                                      const Vector& limit, std::size_t window);

}  // namespace almostconv
