#pragma once

#include <cstddef>
#include <vector>

#include "almostconv/sequence.hpp"

namespace almostconv {

enum class CurveMode { sliding, block };

/// Window-supremum means c_1..c_N of one sequence sample.
struct CesaroCurve {
  CurveMode mode = CurveMode::sliding;
  std::vector<double> values;  // values[n - 1] = c_n
  std::size_t horizon = 0;
  NormKind norm = NormKind::l2;
  double bound = 0.0;

  std::size_t max_window() const { return values.size(); }
  double at(std::size_t n) const { return values.at(n - 1); }
};

struct PEstimate {
  double c_at_N = 0.0;
  double running_min = 0.0;
  CesaroCurve curve;
};

struct QEstimate {
  double tail_max = 0.0;
  CesaroCurve curve;
};

/// max over j = 1..M-n+1 of ||(1/n) sum_{i<n} x_{i+j}||.
double c_sliding(const SequenceSample& x, std::size_t n);

/// max over j >= 1 with jn + n - 1 <= M of ||(1/n) sum_{i<n} x_{i+jn}||.
/// The block starts are a subset of the sliding starts and both read the
/// same prefix-sum differences, so c_block <= c_sliding holds bit-for-bit.
double c_block(const SequenceSample& x, std::size_t n);

/// Largest admissible window for the estimators: floor(M/2).
std::size_t max_estimator_window(const SequenceSample& x);

CesaroCurve sliding_curve(const SequenceSample& x, std::size_t max_window);
CesaroCurve block_curve(const SequenceSample& x, std::size_t max_window);

/// Sliding curve up to N with both limit proxies: c_N itself and min_{n<=N} c_n.
/// The second is justified by subadditivity, which forces lim c_n = inf c_n.
PEstimate estimate_p(const SequenceSample& x, std::size_t max_window);

/// Block curve up to N; the limsup is proxied by the max over n in [ceil(N/2), N].
QEstimate estimate_q(const SequenceSample& x, std::size_t max_window);

struct FeketeViolation {
  std::size_t m = 0;
  std::size_t n = 0;
  double slack = 0.0;  // (m+n)c_{m+n} - m c_m - n c_n, positive when violated
};

struct FeketeAudit {
  std::vector<FeketeViolation> violations;
  double max_slack = 0.0;  // largest slack seen over all pairs
  double tolerance = 0.0;
  std::size_t pairs_checked = 0;

  bool clean() const { return violations.empty(); }
};

/// Checks (m+n)c_{m+n} <= m c_m + n c_n + tol for all m <= n, m+n <= N.
/// Default tolerance is 1e-9 * B. Rejects block-mode curves.
FeketeAudit fekete_audit(const CesaroCurve& curve);
FeketeAudit fekete_audit(const CesaroCurve& curve, double tolerance);

}  // namespace almostconv
