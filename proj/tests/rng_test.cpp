#include <catch_amalgamated.hpp>

#include <array>
#include <cstdint>
#include <vector>

#include "mrtrim/rng.hpp"

using namespace mrtrim;

TEST_CASE("fnv1a64 matches the reference constants", "[rng]") {
  // FNV-1a offset basis: hash of the empty string.
  STATIC_REQUIRE(fnv1a64("") == 0xcbf29ce484222325ull);
  // Single byte: (basis ^ 'a') * prime.
  STATIC_REQUIRE(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  REQUIRE(fnv1a64("tdgen") == 0x8da0e7535cfc11f5ull);
  REQUIRE(fnv1a64("tdgen") != fnv1a64("tdgeN"));
}

TEST_CASE("derive_stream(7, \"tdgen\") yields the frozen word sequence", "[rng]") {
  RngStream r = derive_stream(7, "tdgen");
  REQUIRE(r.next_u64() == 3788721532098504446ull);
  REQUIRE(r.next_u64() == 12761509005994997158ull);
  REQUIRE(r.next_u64() == 14370316651230638118ull);
  REQUIRE(r.next_u64() == 11348851125275864759ull);
}

TEST_CASE("bounded draws from the tdgen stream are frozen", "[rng]") {
  RngStream r = derive_stream(7, "tdgen");
  const std::array<std::uint64_t, 6> expect_below{38, 38, 9, 35, 19, 28};
  for (std::uint64_t e : expect_below) REQUIRE(r.next_below(50) == e);

  RngStream s = derive_stream(7, "tdgen");
  const std::array<std::int64_t, 6> expect_int{39, 39, 10, 36, 20, 29};
  for (std::int64_t e : expect_int) REQUIRE(s.next_int(1, 50) == e);
}

TEST_CASE("next_real01 is the frozen 53-bit mantissa draw", "[rng]") {
  RngStream r = derive_stream(7, "tdgen");
  REQUIRE(r.next_real01() == 0.20538700580219027);
}

TEST_CASE("the EXC permutation stream draw used by the examples is frozen", "[rng]") {
  RngStream r = derive_stream(42, "transform/MR_EXC/0");
  REQUIRE(r.next_below(2) == 1);
}

TEST_CASE("identical (seed, label) pairs replay identically", "[rng]") {
  RngStream a = derive_stream(977, "transform/MR_PER/12");
  RngStream b = derive_stream(977, "transform/MR_PER/12");
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("different labels give decorrelated streams", "[rng]") {
  RngStream a = derive_stream(7, "tdgen");
  RngStream b = derive_stream(7, "transform/MR_ADD/0");
  int equal = 0;
  for (int i = 0; i < 1000; ++i)
    if (a.next_u64() == b.next_u64()) ++equal;
  REQUIRE(equal == 0);
}

TEST_CASE("next_below stays in range and hits every residue", "[rng]") {
  RngStream r = derive_stream(123, "bounds");
  for (std::uint64_t n : {1ull, 2ull, 3ull, 17ull, 50ull, 64ull}) {
    std::vector<int> seen(n, 0);
    for (int i = 0; i < 5000; ++i) {
      const std::uint64_t v = r.next_below(n);
      REQUIRE(v < n);
      ++seen[v];
    }
    for (std::uint64_t v = 0; v < n; ++v) REQUIRE(seen[v] > 0);
  }
}

TEST_CASE("next_below(2^k) is roughly uniform", "[rng]") {
  RngStream r = derive_stream(5, "uniformity");
  constexpr int kBuckets = 16;
  constexpr int kDraws = 100000;
  std::array<int, kBuckets> hist{};
  for (int i = 0; i < kDraws; ++i) ++hist[r.next_below(kBuckets)];
  for (int c : hist) {
    REQUIRE(c > kDraws / kBuckets * 7 / 10);
    REQUIRE(c < kDraws / kBuckets * 13 / 10);
  }
}

TEST_CASE("next_int covers both endpoints inclusively", "[rng]") {
  RngStream r = derive_stream(9, "endpoints");
  bool lo_seen = false, hi_seen = false;
  for (int i = 0; i < 5000; ++i) {
    const std::int64_t v = r.next_int(-3, 3);
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
    lo_seen = lo_seen || v == -3;
    hi_seen = hi_seen || v == 3;
  }
  REQUIRE(lo_seen);
  REQUIRE(hi_seen);
}

TEST_CASE("next_real01 stays in [0, 1)", "[rng]") {
  RngStream r = derive_stream(11, "real01");
  for (int i = 0; i < 10000; ++i) {
    const double v = r.next_real01();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
  }
}

TEST_CASE("all-zero expanded state is repaired", "[rng]") {
  // No 64-bit seed expands to all-zero state through SplitMix64, so exercise
  // the guard indirectly: every seed must produce a non-constant stream.
  RngStream r(0);
  const std::uint64_t first = r.next_u64();
  bool varies = false;
  for (int i = 0; i < 8; ++i) varies = varies || r.next_u64() != first;
  REQUIRE(varies);
}
