#pragma once

#include <cstdint>
#include <random>

namespace pottslab {

/// Seeded RNG with platform-independent output. mt19937_64 is fully specified
/// by the standard; the bounded/unit mappings below avoid the
/// implementation-defined std distributions so that identical seeds yield
/// identical streams everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound >= 1.
  int next_int(int bound) {
    // multiply-shift mapping; bias is < 2^-32 for the small bounds used here
    return static_cast<int>((static_cast<__uint128_t>(gen_()) *
                             static_cast<__uint128_t>(bound)) >> 64);
  }

  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  bool next_bool(double p_true) { return next_unit() < p_true; }

  /// Derives a stream seed for sub-task `index` of a run seeded with `seed`.
  /// splitmix64 finalizer; distinct (seed, index) pairs map to distinct streams.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace pottslab
