#ifndef MRTRIM_RNG_HPP
#define MRTRIM_RNG_HPP

#include <cstdint>
#include <string_view>

namespace mrtrim {

// Seedable, portable randomness. All draws are defined purely in terms of
// 64-bit integer arithmetic, so streams are bit-identical on every platform.
//
// One master seed drives the whole run. Independent sub-streams are derived
// from (seed, label) so that, for example, permutation draws never perturb
// the test-data stream. The label hash is FNV-1a; stream state is expanded
// with SplitMix64; the stream engine is xoshiro256**.

namespace detail {

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// FNV-1a 64-bit hash of a label string.
inline constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// SplitMix64: used only to expand a seed into xoshiro state.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 stream engine.
class RngStream {
 public:
  /// Expands `seed` into engine state via SplitMix64.
  explicit constexpr RngStream(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is a fixed point
  }

  constexpr std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl64(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl64(s_[3], 45);
    return result;
  }

  /// Unbiased draw in [0, n) by masked rejection. n must be > 0.
  constexpr std::uint64_t next_below(std::uint64_t n) {
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      const std::uint64_t x = next_u64() & mask;
      if (x < n) return x;
    }
  }

  /// Uniform integer in [lo, hi], both inclusive.
  constexpr std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_below(span));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double next_real01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t s_[4] = {};
};

/// Derives the sub-stream for `label` from the master seed.
inline constexpr RngStream derive_stream(std::uint64_t seed, std::string_view label) {
  return RngStream(seed ^ fnv1a64(label));
}

}  // namespace mrtrim

#endif  // MRTRIM_RNG_HPP
