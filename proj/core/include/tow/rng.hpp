#pragma once

#include <cstdint>

namespace tow {

// SplitMix64 (Steele, Lea & Flood), used as the project-wide deterministic
// generator. Monte Carlo trials draw from per-trial substreams keyed by
// (seed, trial index), so runs are reproducible bit for bit and trials are
// independent of evaluation order.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  bool coin() { return (next() >> 63) != 0; }

  // unbiased integer in [0, bound)
  uint64_t below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static uint64_t mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

inline SplitMix64 trial_stream(uint64_t seed, uint64_t trial) {
  return SplitMix64(SplitMix64::mix(seed) ^ SplitMix64::mix(trial * 0xD2B74407B1CE6E93ull + 1));
}

}  // namespace tow
