#include <catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mrtrim/checker.hpp"
#include "mrtrim/rng.hpp"
#include "mrtrim/sut_corpus.hpp"

using namespace mrtrim;

namespace {

ExecutionRecord record_of(double source, double followup) {
  ExecutionRecord r;
  r.exec_id = 1;
  r.method = "average";
  r.mr = MrId::kAdd;
  r.source_input = {1, 2, 3};
  r.followup_input = std::vector<double>{4, 5, 6};
  r.source_outcome = ExecutionOutcome::of(source);
  r.followup_outcome = ExecutionOutcome::of(followup);
  return r;
}

}  // namespace

TEST_CASE("verdict status names round-trip", "[checker]") {
  for (VerdictStatus s : {VerdictStatus::kNonViolation, VerdictStatus::kViolation,
                          VerdictStatus::kInvalid})
    REQUIRE(verdict_status_from_name(verdict_status_name(s)) == s);
  REQUIRE_THROWS_AS(verdict_status_from_name("MAYBE"), SchemaError);
}

TEST_CASE("EQUAL accepts equal outcomes and rejects drifts", "[checker]") {
  REQUIRE(check(record_of(2.0, 2.0), Relation::kEqual).status ==
          VerdictStatus::kNonViolation);
  // Within the relative band: 1e6 vs 1e6 + 1e-4, band = 1e-9 * 1e6 = 1e-3.
  REQUIRE(check(record_of(1e6, 1e6 + 1e-4), Relation::kEqual).status ==
          VerdictStatus::kNonViolation);
  // Outside the band.
  const Verdict v = check(record_of(1e6, 1e6 + 1.0), Relation::kEqual);
  REQUIRE(v.status == VerdictStatus::kViolation);
  REQUIRE(v.detail == "observed f > s");
  const Verdict w = check(record_of(1e6, 1e6 - 1.0), Relation::kEqual);
  REQUIRE(w.status == VerdictStatus::kViolation);
  REQUIRE(w.detail == "observed f < s");
}

TEST_CASE("the tolerance band has an absolute floor of 1", "[checker]") {
  // Near zero the band is tol * 1, so tiny drifts pass.
  REQUIRE(check(record_of(0.0, 5e-10), Relation::kEqual).status ==
          VerdictStatus::kNonViolation);
  REQUIRE(check(record_of(0.0, 5e-9), Relation::kEqual).status ==
          VerdictStatus::kViolation);
}

TEST_CASE("GEQ tolerates dips inside the band only", "[checker]") {
  REQUIRE(check(record_of(2.0, 5.0), Relation::kGeq).status ==
          VerdictStatus::kNonViolation);
  REQUIRE(check(record_of(2.0, 2.0), Relation::kGeq).status ==
          VerdictStatus::kNonViolation);
  REQUIRE(check(record_of(2.0, 2.0 - 1e-10), Relation::kGeq).status ==
          VerdictStatus::kNonViolation);
  const Verdict v = check(record_of(2.0, 1.0), Relation::kGeq);
  REQUIRE(v.status == VerdictStatus::kViolation);
  REQUIRE(v.detail == "observed f < s");
}

TEST_CASE("LEQ mirrors GEQ", "[checker]") {
  REQUIRE(check(record_of(5.0, 2.0), Relation::kLeq).status ==
          VerdictStatus::kNonViolation);
  REQUIRE(check(record_of(5.0, 5.0 + 1e-10), Relation::kLeq).status ==
          VerdictStatus::kNonViolation);
  const Verdict v = check(record_of(5.0, 6.0), Relation::kLeq);
  REQUIRE(v.status == VerdictStatus::kViolation);
  REQUIRE(v.detail == "observed f > s");
}

TEST_CASE("durbinWatson under MR_ADD is the canonical violation", "[checker]") {
  // dw([1,2,3]) = 2/14, dw([4,5,6]) = 2/77: the follow-up drops, violating GEQ.
  ExecutionRecord r;
  r.exec_id = 7;
  r.method = "durbinWatson";
  r.mr = MrId::kAdd;
  r.source_input = {1, 2, 3};
  r.followup_input = std::vector<double>{4, 5, 6};
  r.source_outcome = evaluate("durbinWatson", r.source_input);
  r.followup_outcome = evaluate("durbinWatson", *r.followup_input);
  REQUIRE(r.source_outcome.value() == 0.14285714285714285);
  REQUIRE(r.followup_outcome->value() == 0.025974025974025976);
  const Verdict v = check(r, Relation::kGeq);
  REQUIRE(v.status == VerdictStatus::kViolation);
  REQUIRE(v.detail == "observed f < s");
  REQUIRE(v.exec_id == 7);
  REQUIRE(v.method == "durbinWatson");
  REQUIRE(v.mr == MrId::kAdd);
}

TEST_CASE("failures and skipped transforms map to INVALID", "[checker]") {
  SECTION("source failure") {
    ExecutionRecord r = record_of(1.0, 2.0);
    r.source_outcome =
        ExecutionOutcome::fail(FailureKind::kDomainError, "all elements must be > 0");
    const Verdict v = check(r, Relation::kGeq);
    REQUIRE(v.status == VerdictStatus::kInvalid);
    REQUIRE(v.detail == "source DOMAIN_ERROR");
  }
  SECTION("follow-up failure") {
    ExecutionRecord r = record_of(1.0, 2.0);
    r.followup_outcome = ExecutionOutcome::fail(FailureKind::kArityError, "too short");
    const Verdict v = check(r, Relation::kGeq);
    REQUIRE(v.status == VerdictStatus::kInvalid);
    REQUIRE(v.detail == "followup ARITY_ERROR");
  }
  SECTION("both fail") {
    ExecutionRecord r = record_of(1.0, 2.0);
    r.source_outcome = ExecutionOutcome::fail(FailureKind::kDomainError, "x");
    r.followup_outcome = ExecutionOutcome::fail(FailureKind::kOverflow, "y");
    const Verdict v = check(r, Relation::kEqual);
    REQUIRE(v.status == VerdictStatus::kInvalid);
    REQUIRE(v.detail == "source DOMAIN_ERROR; followup OVERFLOW");
  }
  SECTION("skipped transform") {
    ExecutionRecord r = record_of(1.0, 2.0);
    r.followup_input.reset();
    r.followup_outcome.reset();
    const Verdict v = check(r, Relation::kLeq);
    REQUIRE(v.status == VerdictStatus::kInvalid);
    REQUIRE(v.detail == "transform skipped");
  }
  SECTION("source failure and skipped transform") {
    ExecutionRecord r = record_of(1.0, 2.0);
    r.source_outcome = ExecutionOutcome::fail(FailureKind::kTimeout, "t");
    r.followup_input.reset();
    r.followup_outcome.reset();
    const Verdict v = check(r, Relation::kLeq);
    REQUIRE(v.status == VerdictStatus::kInvalid);
    REQUIRE(v.detail == "source TIMEOUT; transform skipped");
  }
}

TEST_CASE("non-violation verdicts carry no detail", "[checker]") {
  REQUIRE(check(record_of(3.0, 3.0), Relation::kEqual).detail.empty());
  REQUIRE(check(record_of(1.0, 9.0), Relation::kGeq).detail.empty());
}

TEST_CASE("exactly one status per trial over random outcome pairs", "[checker]") {
  RngStream rng = derive_stream(314, "trichotomy");
  const Relation relations[] = {Relation::kEqual, Relation::kGeq, Relation::kLeq};
  for (int i = 0; i < 10000; ++i) {
    const double s = static_cast<double>(rng.next_int(-1000000, 1000000)) / 100.0;
    const double f = static_cast<double>(rng.next_int(-1000000, 1000000)) / 100.0;
    const Relation rel = relations[rng.next_below(3)];
    const Verdict v = check(record_of(s, f), rel);
    // Valid outcomes never yield INVALID; total over valid records.
    REQUIRE((v.status == VerdictStatus::kNonViolation ||
             v.status == VerdictStatus::kViolation));

    const double band = kDefaultTolerance * std::max({1.0, std::abs(s), std::abs(f)});
    if (std::abs(f - s) > band) {
      // Strictly outside the band: GEQ and LEQ disagree, and swapping the
      // outcomes flips the GEQ verdict.
      const Verdict geq = check(record_of(s, f), Relation::kGeq);
      const Verdict leq = check(record_of(s, f), Relation::kLeq);
      REQUIRE(geq.status != leq.status);
      const Verdict swapped = check(record_of(f, s), Relation::kGeq);
      REQUIRE(swapped.status != geq.status);
      REQUIRE(check(record_of(s, f), Relation::kEqual).status ==
              VerdictStatus::kViolation);
    } else {
      // Inside the band every relation accepts.
      for (Relation r2 : relations)
        REQUIRE(check(record_of(s, f), r2).status == VerdictStatus::kNonViolation);
    }
  }
}

TEST_CASE("check_all picks relations by MR", "[checker]") {
  const auto specs = default_specs();
  std::vector<ExecutionRecord> records;
  // MR_PER with equal outcomes -> NON_VIOLATION under EQUAL.
  ExecutionRecord per = record_of(4.0, 4.0);
  per.mr = MrId::kPer;
  per.exec_id = 0;
  records.push_back(per);
  // MR_ADD (GEQ) with rising outcome -> NON_VIOLATION.
  ExecutionRecord add = record_of(2.0, 5.0);
  add.exec_id = 1;
  records.push_back(add);
  // MR_INV (LEQ) with rising outcome -> VIOLATION.
  ExecutionRecord inv = record_of(2.0, 5.0);
  inv.mr = MrId::kInv;
  inv.exec_id = 2;
  records.push_back(inv);

  const auto verdicts = check_all(records, specs);
  REQUIRE(verdicts.size() == 3);
  REQUIRE(verdicts[0].status == VerdictStatus::kNonViolation);
  REQUIRE(verdicts[1].status == VerdictStatus::kNonViolation);
  REQUIRE(verdicts[2].status == VerdictStatus::kViolation);
  for (std::size_t i = 0; i < records.size(); ++i) {
    REQUIRE(verdicts[i].exec_id == records[i].exec_id);
    REQUIRE(verdicts[i].method == records[i].method);
    REQUIRE(verdicts[i].mr == records[i].mr);
  }
}

TEST_CASE("a looser tolerance can flip a violation to non-violation", "[checker]") {
  const ExecutionRecord r = record_of(2.0, 1.9);
  REQUIRE(check(r, Relation::kGeq, 1e-9).status == VerdictStatus::kViolation);
  REQUIRE(check(r, Relation::kGeq, 0.1).status == VerdictStatus::kNonViolation);
}
