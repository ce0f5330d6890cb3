#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace dynprice {

/// SplitMix64: small counter-style generator satisfying
/// UniformRandomBitGenerator. Each simulated segment gets its own instance
/// keyed by (root seed, segment index), so streams never depend on the order
/// in which other segments were drawn.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Hash a root seed together with stream identifiers into a child seed.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = SplitMix64::mix(root ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t k : keys) h = SplitMix64::mix(h ^ SplitMix64::mix(k + 0x9e3779b97f4a7c15ULL));
  return h;
}

}  // namespace dynprice
