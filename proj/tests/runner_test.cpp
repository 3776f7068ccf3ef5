#include <catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "mrtrim/checker.hpp"
#include "mrtrim/runner.hpp"
#include "mrtrim/tdgen.hpp"

using namespace mrtrim;

namespace {

FuzzConfig small_config(std::uint64_t count = 100) {
  FuzzConfig c;  // 1..50 ints, lengths 2..20, seed 7
  c.budget = CountBudget{count};
  return c;
}

}  // namespace

TEST_CASE("record cardinality is methods x MRs x data", "[runner]") {
  const FuzzConfig c = small_config(100);
  const auto data = generate(c);
  const auto specs = default_specs();
  const std::vector<std::string> methods{"average", "durbinWatson"};
  const auto records = run_mt(methods, specs, data, c);
  REQUIRE(records.size() == 2 * 6 * 100);

  std::set<std::uint64_t> ids;
  for (const auto& r : records) ids.insert(r.exec_id);
  REQUIRE(ids.size() == records.size());
  REQUIRE(*ids.begin() == 0);
  REQUIRE(*ids.rbegin() == records.size() - 1);

  // exec_id equals position: (method-major, then MR, then datum).
  for (std::size_t i = 0; i < records.size(); ++i)
    REQUIRE(records[i].exec_id == i);

  // Block structure: method changes every |mrs| * n blocks, MR every n.
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::size_t m = i / (6 * 100);
    const std::size_t mr = (i / 100) % 6;
    const std::size_t d = i % 100;
    REQUIRE(records[i].method == methods[m]);
    REQUIRE(records[i].mr == kAllMrs[mr]);
    REQUIRE(records[i].source_input == data[d].values);
  }
}

TEST_CASE("a known trial produces the documented outcomes", "[runner]") {
  const TestDatum d{0, {1, 2, 3}};
  FuzzConfig c = small_config(1);
  const auto records =
      run_mt({"average"}, {make_spec(MrId::kAdd)}, {d}, c);
  REQUIRE(records.size() == 1);
  const ExecutionRecord& r = records[0];
  REQUIRE(r.source_input == std::vector<double>{1, 2, 3});
  REQUIRE(r.followup_input == std::vector<double>{4, 5, 6});
  REQUIRE(r.source_outcome.value() == 2.0);
  REQUIRE(r.followup_outcome->value() == 5.0);
}

TEST_CASE("arity failures appear on both sides for short data", "[runner]") {
  const TestDatum d{0, {4}};
  FuzzConfig c = small_config(1);
  const auto records = run_mt({"sampleVariance"}, {make_spec(MrId::kPer)}, {d}, c);
  const ExecutionRecord& r = records[0];
  REQUIRE(!r.source_outcome.is_value());
  REQUIRE(r.source_outcome.failure().kind == FailureKind::kArityError);
  REQUIRE(r.followup_input.has_value());  // PER of a singleton applies
  REQUIRE(!r.followup_outcome->is_value());
  REQUIRE(r.followup_outcome->failure().kind == FailureKind::kArityError);
}

TEST_CASE("skipped transforms leave both follow-up fields absent", "[runner]") {
  const TestDatum d{0, {}};
  FuzzConfig c = small_config(1);
  c.min_len = 0;
  const auto records = run_mt({"add_values"}, {make_spec(MrId::kExc)}, {d}, c);
  const ExecutionRecord& r = records[0];
  REQUIRE(!r.followup_input.has_value());
  REQUIRE(!r.followup_outcome.has_value());
  REQUIRE(r.source_outcome.value() == 0.0);
}

TEST_CASE("followup_input and followup_outcome are always paired", "[runner]") {
  FuzzConfig c = small_config(150);
  c.min_len = 0;  // force some empty lists so MR_EXC skips
  const auto data = generate(c);
  const auto records = run_mt({"add_values", "median"}, default_specs(), data, c);
  bool saw_skip = false;
  for (const auto& r : records) {
    REQUIRE(r.followup_input.has_value() == r.followup_outcome.has_value());
    saw_skip = saw_skip || !r.followup_input.has_value();
  }
  REQUIRE(saw_skip);
}

TEST_CASE("execution is deterministic and thread-count independent", "[runner]") {
  const FuzzConfig c = small_config(80);
  const auto data = generate(c);
  const auto specs = default_specs();
  const std::vector<std::string> methods{"average", "durbinWatson", "geometric_mean",
                                         "kurtosis", "product"};
  const auto serial = run_mt(methods, specs, data, c, 1);
  const auto again = run_mt(methods, specs, data, c, 1);
  const auto par4 = run_mt(methods, specs, data, c, 4);
  const auto par13 = run_mt(methods, specs, data, c, 13);
  REQUIRE(serial == again);
  REQUIRE(serial == par4);
  REQUIRE(serial == par13);
}

TEST_CASE("follow-up data does not depend on the method list", "[runner]") {
  const FuzzConfig c = small_config(40);
  const auto data = generate(c);
  const auto specs = default_specs();
  const auto one = run_mt({"average"}, specs, data, c);
  const auto two = run_mt({"product", "average"}, specs, data, c);
  // `average` records sit in the second block of `two`.
  const std::size_t block = specs.size() * data.size();
  for (std::size_t i = 0; i < block; ++i) {
    REQUIRE(two[block + i].method == "average");
    REQUIRE(two[block + i].followup_input == one[i].followup_input);
    REQUIRE(two[block + i].source_input == one[i].source_input);
  }
}

TEST_CASE("transform_all fills every requested variant", "[runner]") {
  const FuzzConfig c = small_config(30);
  const auto data = generate(c);
  const auto bundle = transform_all(default_specs(), data, c);
  REQUIRE(bundle.entries.size() == data.size());
  REQUIRE(bundle.config == c);
  for (const auto& e : bundle.entries) {
    // Lists here are never empty (min_len = 2), so every MR applies.
    for (MrId id : kAllMrs) REQUIRE(e.variants[mr_index(id)].has_value());
    REQUIRE(e.variants[mr_index(MrId::kInc)]->size() == e.datum.values.size() + 1);
    REQUIRE(e.variants[mr_index(MrId::kExc)]->size() == e.datum.values.size() - 1);
  }
}

TEST_CASE("unknown methods are rejected before execution", "[runner]") {
  const FuzzConfig c = small_config(5);
  const auto data = generate(c);
  REQUIRE_THROWS_AS(run_mt({"average", "nope"}, default_specs(), data, c), LookupError);
}

TEST_CASE("permutation-invariant methods never violate MR_PER", "[runner]") {
  const FuzzConfig c = small_config(60);
  const auto data = generate(c);
  const auto specs = std::vector<MrSpec>{make_spec(MrId::kPer)};
  std::vector<std::string> invariant;
  for (const auto& d : list_methods())
    if (d.permutation_invariant) invariant.push_back(d.name);
  const auto records = run_mt(invariant, specs, data, c);
  for (const Verdict& v : check_all(records, specs))
    REQUIRE(v.status != VerdictStatus::kViolation);
}
