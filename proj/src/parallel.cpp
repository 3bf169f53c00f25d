#include "almostconv/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace almostconv {

namespace {

std::atomic<std::size_t> g_override{0};

std::size_t env_threads() {
  static const std::size_t value = [] {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* s = std::getenv("ALMOSTCONV_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(s, &end, 10);
      if (end != s && v > 0) return std::min<std::size_t>(static_cast<std::size_t>(v), hw);
    }
    return hw;
  }();
  return value;
}

}  // namespace

std::size_t max_threads() {
  const std::size_t o = g_override.load();
  return o != 0 ? o : env_threads();
}

void set_max_threads(std::size_t n) { g_override.store(n); }

void parallel_chunks(std::size_t count, std::size_t min_chunk,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t chunk = std::max<std::size_t>(1, min_chunk);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  const std::size_t workers = std::min(chunks, max_threads());
  if (workers <= 1) {
    for (std::size_t b = 0; b < count; b += chunk) body(b, std::min(count, b + chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::size_t b = c * chunk;
      body(b, std::min(count, b + chunk));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

}  // namespace almostconv
