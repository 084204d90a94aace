#pragma once

#include <cstdint>

namespace wordlab {

/// SplitMix64 (Steele, Lea, Flood 2014). Output depends only on the seed, on
/// every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    return mix(z);
  }

  /// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
  /// rejection, so the result is exactly uniform.
  std::uint64_t uniform(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// The SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed for stream `index` derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return SplitMix64::mix(SplitMix64::mix(master) ^ SplitMix64::mix(index + 0x632BE59BD9B4E019ULL));
}

}  // namespace wordlab
