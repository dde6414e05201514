#pragma once

#include <cstdint>

namespace scdg {

// SplitMix64: tiny 64-bit mixer with a single word of state. Used everywhere
// randomness is needed so runs are reproducible from one integer seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Stream for one trial, independent of how trials are batched across
  // threads: trial k always sees the same draws.
  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64(seed + 2 * trial * 0x9E3779B97F4A7C15ULL);
  }

 private:
  std::uint64_t state_;
};

}  // namespace scdg
