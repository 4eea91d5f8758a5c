#ifndef SPINAMP_RNG_HPP
#define SPINAMP_RNG_HPP

#include <cstdint>

namespace spinamp {

/// Default seed for every randomized entry point in the library.
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// SplitMix64 (Steele/Lea/Flood, the java.util.SplittableRandom mixer).
/// The entire state is a single 64-bit counter, so output k is a pure
/// function of (seed, k): substreams derived from (seed, index) give the
/// same merged results no matter how work is partitioned across workers.
/// Reference vector: seed 0 produces 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4,
/// 0x06C45D188009454F, ...
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Independent generator for one element of an indexed family of draws
  /// (e.g. one simulated run). Deterministic in (seed, index).
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(seed + kGolden) ^ mix((index + 1) * kGolden));
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace spinamp

#endif  // SPINAMP_RNG_HPP
