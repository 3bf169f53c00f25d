#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace almostconv {

/// Worker cap: ALMOSTCONV_THREADS if set to a positive integer, otherwise the
/// hardware concurrency. Overridable for tests via set_max_threads.
std::size_t max_threads();
void set_max_threads(std::size_t n);  // 0 restores the environment default

/// Runs body(begin, end) over a static partition of [0, count). Chunks are
/// disjoint, so callers writing to distinct indices need no synchronisation.
void parallel_chunks(std::size_t count, std::size_t min_chunk,
                     const std::function<void(std::size_t, std::size_t)>& body);

/// max_{i < count} f(i), or `init` if count == 0. Max is order independent,
/// so the result is bit-identical for any thread count.
template <class F>
double parallel_max(std::size_t count, double init, F&& f, std::size_t min_chunk = 1 << 14) {
  std::vector<double> partial(std::max<std::size_t>(1, max_threads()), init);
  std::vector<double>* out = &partial;
  std::size_t slot_size = (count + partial.size() - 1) / partial.size();
  if (slot_size < min_chunk) slot_size = min_chunk;
  parallel_chunks(count, slot_size, [&](std::size_t b, std::size_t e) {
    double m = init;
    for (std::size_t i = b; i < e; ++i) m = std::max(m, f(i));
    (*out)[b / slot_size] = m;
  });
  return *std::max_element(partial.begin(), partial.end());
}

}  // namespace almostconv
