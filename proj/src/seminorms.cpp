#include "almostconv/seminorms.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "almostconv/parallel.hpp"

namespace almostconv {

namespace {

// ||(P_{j+n-1} - P_{j-1}) / n||; the single kernel behind every window estimate.
// Length-1 windows read the sample itself so that c_1 is exactly the sup norm.
inline double window_mean_norm(const SequenceSample& x, std::size_t n, std::size_t j,
                               std::vector<double>& scratch) {
  if (n == 1) return norm(x[j], x.norm_kind());
  scratch.resize(x.dim());
  x.prefix_sums().window_sum(j, j + n - 1, scratch);
  const double inv = static_cast<double>(n);
  for (double& c : scratch) c /= inv;
  return norm(scratch, x.norm_kind());
}

double c_sliding_seq(const SequenceSample& x, std::size_t n) {
  std::vector<double> scratch;
  double m = 0.0;
  for (std::size_t j = 1; j + n - 1 <= x.size(); ++j) {
    m = std::max(m, window_mean_norm(x, n, j, scratch));
  }
  return m;
}

double c_block_seq(const SequenceSample& x, std::size_t n) {
  std::vector<double> scratch;
  double m = 0.0;
  for (std::size_t s = n; s + n - 1 <= x.size(); s += n) {
    m = std::max(m, window_mean_norm(x, n, s, scratch));
  }
  return m;
}

void check_sliding_window(const SequenceSample& x, std::size_t n) {
  if (n < 1 || n > x.size()) {
    throw std::invalid_argument("window length " + std::to_string(n) + " outside 1..M=" +
                                std::to_string(x.size()));
  }
}

void check_block_window(const SequenceSample& x, std::size_t n) {
  if (n < 1 || 2 * n - 1 > x.size()) {
    throw std::invalid_argument("no block of length " + std::to_string(n) +
                                " fits horizon M=" + std::to_string(x.size()));
  }
}

void check_estimator_window(const SequenceSample& x, std::size_t n) {
  if (n < 1 || n > max_estimator_window(x)) {
    throw std::invalid_argument("estimator window N=" + std::to_string(n) +
                                " outside 1..floor(M/2)=" +
                                std::to_string(max_estimator_window(x)));
  }
}

template <class Kernel>
CesaroCurve build_curve(const SequenceSample& x, std::size_t max_window, CurveMode mode,
                        Kernel kernel) {
  CesaroCurve curve;
  curve.mode = mode;
  curve.horizon = x.size();
  curve.norm = x.norm_kind();
  curve.bound = x.bound();
  curve.values.assign(max_window, 0.0);
  // each entry costs O(M d); split over n so threads never nest
  parallel_chunks(max_window, std::max<std::size_t>(1, (1 << 16) / (x.size() + 1)),
                  [&](std::size_t b, std::size_t e) {
                    for (std::size_t i = b; i < e; ++i) curve.values[i] = kernel(x, i + 1);
                  });
  return curve;
}

}  // namespace

double c_sliding(const SequenceSample& x, std::size_t n) {
  check_sliding_window(x, n);
  const std::size_t starts = x.size() - n + 1;
  return parallel_max(starts, 0.0, [&](std::size_t i) {
    thread_local std::vector<double> scratch;
    return window_mean_norm(x, n, i + 1, scratch);
  });
}

double c_block(const SequenceSample& x, std::size_t n) {
  check_block_window(x, n);
  return c_block_seq(x, n);
}

std::size_t max_estimator_window(const SequenceSample& x) { return x.size() / 2; }

CesaroCurve sliding_curve(const SequenceSample& x, std::size_t max_window) {
  if (max_window > x.size()) check_sliding_window(x, max_window);
  return build_curve(x, max_window, CurveMode::sliding, c_sliding_seq);
}

CesaroCurve block_curve(const SequenceSample& x, std::size_t max_window) {
  if (max_window > 0) check_block_window(x, max_window);
  return build_curve(x, max_window, CurveMode::block, c_block_seq);
}

PEstimate estimate_p(const SequenceSample& x, std::size_t max_window) {
  check_estimator_window(x, max_window);
  PEstimate est;
  est.curve = sliding_curve(x, max_window);
  est.c_at_N = est.curve.values.back();
  est.running_min = *std::min_element(est.curve.values.begin(), est.curve.values.end());
  return est;
}

QEstimate estimate_q(const SequenceSample& x, std::size_t max_window) {
  check_estimator_window(x, max_window);
  QEstimate est;
  est.curve = block_curve(x, max_window);
  const std::size_t first = (max_window + 1) / 2;
  est.tail_max = *std::max_element(est.curve.values.begin() + (first - 1), est.curve.values.end());
  return est;
}

FeketeAudit fekete_audit(const CesaroCurve& curve) {
  return fekete_audit(curve, 1e-9 * curve.bound);
}

FeketeAudit fekete_audit(const CesaroCurve& curve, double tolerance) {
  if (curve.mode != CurveMode::sliding) {
    throw std::invalid_argument("subadditivity audit applies to sliding curves only");
  }
  FeketeAudit audit;
  audit.tolerance = tolerance;
  const std::size_t big_n = curve.max_window();
  bool first = true;
  for (std::size_t m = 1; 2 * m <= big_n; ++m) {
    for (std::size_t n = m; m + n <= big_n; ++n) {
      // (m+n)c_{m+n} - m c_m - n c_n, grouped so a flat curve gives exactly 0
      const double top = curve.at(m + n);
      const double slack = static_cast<double>(m) * (top - curve.at(m)) +
                           static_cast<double>(n) * (top - curve.at(n));
      if (first || slack > audit.max_slack) audit.max_slack = slack;
      first = false;
      ++audit.pairs_checked;
      if (slack > tolerance) audit.violations.push_back({m, n, slack});
    }
  }
  return audit;
}

}  // namespace almostconv
