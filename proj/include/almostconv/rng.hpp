#pragma once

#include <cstdint>

namespace almostconv {

/// SplitMix64 (Steele, Lea, Flood 2014). The state advances by
/// 0x9E3779B97F4A7C15 and each output is mixed with the multipliers
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB (shifts 30, 27, 31).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Top 53 bits scaled into [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace almostconv
