#pragma once

#include <cstdint>
#include <string_view>

namespace momentlab {

/// SplitMix64 (Steele, Lea, Flood 2014). Every random quantity in the library
/// derives from this generator so that results are identical across
/// platforms and standard-library implementations.
class SplitMix64 {
 public:
  static constexpr std::string_view kName = "splitmix64-v1";

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform integer in [0, bound). Rejection sampling removes modulo bias.
  std::uint64_t bounded(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed of sub-stream (a, b) of `master`; used for per-trial seeds in sweeps.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t h = SplitMix64::mix(master + 0x9E3779B97F4A7C15ULL * (a + 1));
  return SplitMix64::mix(h ^ (0xD1B54A32D192ED03ULL * (b + 1)));
}

}  // namespace momentlab
