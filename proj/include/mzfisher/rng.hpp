#pragma once

#include <cstdint>

namespace mzfisher {

/// Counter-based pseudo-random generator built on the SplitMix64 mixing
/// function. The n-th output is a pure function of (stream_key, n), so
/// draws are reproducible regardless of threading or evaluation order.
///
/// Stream splitting: stream k of a user seed s is keyed by
///   key = mix(mix(s) ^ mix(k + 1)),
/// which gives statistically independent streams for Monte Carlo runs,
/// hill-climb restarts and witness trials.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t stream_key) : key_(stream_key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static CounterRng stream(std::uint64_t seed, std::uint64_t stream_index) {
    return CounterRng(mix(mix(seed) ^ mix(stream_index + 1)));
  }

  std::uint64_t next_u64() { return mix(key_ + ++counter_ * 0x9E3779B97F4A7C15ULL); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (portable, unlike std distributions).
  double next_gaussian();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace mzfisher
