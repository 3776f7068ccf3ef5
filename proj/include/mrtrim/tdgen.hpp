#ifndef MRTRIM_TDGEN_HPP
#define MRTRIM_TDGEN_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mrtrim/canonical.hpp"
#include "mrtrim/errors.hpp"
#include "mrtrim/rng.hpp"

namespace mrtrim {

enum class InputType { kInt, kFloat };

inline const char* input_type_name(InputType t) {
  return t == InputType::kInt ? "int" : "float";
}

inline InputType input_type_from_name(const std::string& s) {
  if (s == "int") return InputType::kInt;
  if (s == "float") return InputType::kFloat;
  throw ConfigError("unknown input type: '" + s + "' (expected 'int' or 'float')");
}

/// Generate exactly `count` data.
struct CountBudget {
  std::uint64_t count = 1000;

  friend bool operator==(const CountBudget&, const CountBudget&) = default;
};

/// Generate until `seconds` of wall clock elapsed. The resulting count is
/// machine-dependent; CountBudget is the reproducible default.
struct DurationBudget {
  double seconds = 0.5;

  friend bool operator==(const DurationBudget&, const DurationBudget&) = default;
};

using Budget = std::variant<CountBudget, DurationBudget>;

/// Fuzzer parameters: element range, element type, stop condition, list
/// length range and master seed.
struct FuzzConfig {
  double low = 1;
  double high = 50;
  InputType input_type = InputType::kInt;
  Budget budget = CountBudget{1000};
  std::size_t min_len = 2;
  std::size_t max_len = 20;
  std::uint64_t seed = 7;

  void validate() const {
    if (!(low <= high))
      throw ConfigError("invalid range: low > high");
    if (min_len > max_len)
      throw ConfigError("invalid lengths: min_len > max_len");
    if (input_type == InputType::kInt &&
        std::ceil(low) > std::floor(high))
      throw ConfigError("invalid range: no integers in [low, high]");
    if (const auto* c = std::get_if<CountBudget>(&budget); c && c->count == 0)
      throw ConfigError("invalid budget: count must be positive");
    if (const auto* d = std::get_if<DurationBudget>(&budget); d && !(d->seconds > 0))
      throw ConfigError("invalid budget: duration must be positive");
  }

  friend bool operator==(const FuzzConfig&, const FuzzConfig&) = default;
};

/// One generated input: a run-unique id plus a list of numbers.
struct TestDatum {
  std::uint64_t id = 0;
  std::vector<double> values;

  friend bool operator==(const TestDatum&, const TestDatum&) = default;
};

namespace detail {

inline double draw_element(RngStream& rng, const FuzzConfig& c) {
  if (c.input_type == InputType::kInt) {
    const auto lo = static_cast<std::int64_t>(std::ceil(c.low));
    const auto hi = static_cast<std::int64_t>(std::floor(c.high));
    return static_cast<double>(rng.next_int(lo, hi));
  }
  // Floats are rounded to 6 decimal places so artifacts stay byte-stable,
  // then clamped back into [low, high] in case rounding crossed a bound.
  double v = c.low + rng.next_real01() * (c.high - c.low);
  v = std::round(v * 1e6) / 1e6;
  if (v < c.low) v = c.low;
  if (v > c.high) v = c.high;
  return canonical_round(v);
}

inline TestDatum draw_datum(RngStream& rng, const FuzzConfig& c, std::uint64_t id) {
  TestDatum d;
  d.id = id;
  const std::size_t len =
      c.min_len + static_cast<std::size_t>(rng.next_below(c.max_len - c.min_len + 1));
  d.values.reserve(len);
  for (std::size_t i = 0; i < len; ++i) d.values.push_back(draw_element(rng, c));
  return d;
}

}  // namespace detail

/// Generates random numeric-list test data. Deterministic per config under a
/// CountBudget; a DurationBudget stops at the first datum completed after the
/// deadline (at least one datum is produced).
inline std::vector<TestDatum> generate(const FuzzConfig& config) {
  config.validate();
  RngStream rng = derive_stream(config.seed, "tdgen");
  std::vector<TestDatum> out;

  if (const auto* c = std::get_if<CountBudget>(&config.budget)) {
    out.reserve(c->count);
    for (std::uint64_t i = 0; i < c->count; ++i)
      out.push_back(detail::draw_datum(rng, config, i));
    return out;
  }

  const auto& d = std::get<DurationBudget>(config.budget);
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(d.seconds);
  std::uint64_t id = 0;
  do {
    out.push_back(detail::draw_datum(rng, config, id++));
  } while (std::chrono::steady_clock::now() < deadline);
  return out;
}

}  // namespace mrtrim

#endif  // MRTRIM_TDGEN_HPP
