#pragma once

#include <cstdint>
#include <limits>

namespace acsais {

/// SplitMix64: output k is a fixed bijective mix of (key + k * gamma), so a
/// stream is fully determined by its key and draw count. Satisfies
/// UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t key) : state_(key) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Key of substream `index` under master seed `seed`.
  static constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
    return mix(mix(seed) ^ mix(index + 0x9e3779b97f4a7c15ULL));
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform double in the open interval (0, 1).
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t state_;
};

}  // namespace acsais
