#pragma once

#include <cstdint>

namespace dcg {

/// SplitMix64 (Steele, Lea, Flood 2014), the fixed published generator all
/// experiments draw from, so reports reproduce bit-for-bit across
/// implementations. Streams are keyed deterministically off a base seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53 mantissa bits.
  double next_double() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return lo + int(next() % std::uint64_t(hi - lo + 1));
  }

  /// Independent child generator; order-insensitive when keyed by index.
  SplitMix64 split() { return SplitMix64(next() ^ 0x7F4A7C159E3779B9ull); }

  /// Generator for stream `index` of the given base seed.
  static SplitMix64 stream(std::uint64_t base_seed, std::uint64_t index) {
    SplitMix64 kdf(base_seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
    return SplitMix64(kdf.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace dcg
