#ifndef MRTRIM_CHECKER_HPP
#define MRTRIM_CHECKER_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrtrim/mr_catalog.hpp"
#include "mrtrim/runner_types.hpp"
#include "mrtrim/sut_corpus.hpp"

namespace mrtrim {

enum class VerdictStatus { kNonViolation, kViolation, kInvalid };

inline const char* verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kNonViolation: return "NON_VIOLATION";
    case VerdictStatus::kViolation: return "VIOLATION";
    case VerdictStatus::kInvalid: return "INVALID";
  }
  return "?";
}

inline VerdictStatus verdict_status_from_name(const std::string& s) {
  for (VerdictStatus v : {VerdictStatus::kNonViolation, VerdictStatus::kViolation,
                          VerdictStatus::kInvalid})
    if (s == verdict_status_name(v)) return v;
  throw SchemaError("unknown verdict status: '" + s + "'");
}

/// Per-trial verdict. `detail` is empty for NON_VIOLATION, names the observed
/// relation for VIOLATION, and names the failure kind(s) for INVALID.
struct Verdict {
  std::uint64_t exec_id = 0;
  std::string method;
  MrId mr = MrId::kAdd;
  VerdictStatus status = VerdictStatus::kInvalid;
  std::string detail;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline constexpr double kDefaultTolerance = 1e-9;

namespace checker_detail {

inline std::string invalid_detail(const ExecutionRecord& r) {
  std::string d;
  if (!r.source_outcome.is_value()) {
    d += "source ";
    d += failure_kind_name(r.source_outcome.failure().kind);
  }
  if (!r.followup_outcome.has_value()) {
    if (!d.empty()) d += "; ";
    d += "transform skipped";
  } else if (!r.followup_outcome->is_value()) {
    if (!d.empty()) d += "; ";
    d += "followup ";
    d += failure_kind_name(r.followup_outcome->failure().kind);
  }
  return d;
}

}  // namespace checker_detail

/// Compares the two outcomes of one trial against the MR's expected relation.
/// Tolerance is relative with a floor of 1: the band is tol*max(1,|s|,|f|).
/// Total over valid records; any failure or skipped transform maps to INVALID.
inline Verdict check(const ExecutionRecord& record, Relation relation,
                     double tolerance = kDefaultTolerance) {
  Verdict v;
  v.exec_id = record.exec_id;
  v.method = record.method;
  v.mr = record.mr;

  const bool source_ok = record.source_outcome.is_value();
  const bool followup_ok =
      record.followup_outcome.has_value() && record.followup_outcome->is_value();
  if (!source_ok || !followup_ok) {
    v.status = VerdictStatus::kInvalid;
    v.detail = checker_detail::invalid_detail(record);
    return v;
  }

  const double s = record.source_outcome.value();
  const double f = record.followup_outcome->value();
  const double band = tolerance * std::max({1.0, std::abs(s), std::abs(f)});

  bool holds = false;
  switch (relation) {
    case Relation::kEqual: holds = std::abs(f - s) <= band; break;
    case Relation::kGeq: holds = f >= s - band; break;
    case Relation::kLeq: holds = f <= s + band; break;
  }
  if (holds) {
    v.status = VerdictStatus::kNonViolation;
    v.detail.clear();
  } else {
    v.status = VerdictStatus::kViolation;
    // Report which way the follow-up actually moved.
    v.detail = f > s ? "observed f > s" : "observed f < s";
  }
  return v;
}

/// Checks a whole record batch with per-MR expected relations taken from the
/// given specs (falling back to the catalog default when a spec is absent).
inline std::vector<Verdict> check_all(const std::vector<ExecutionRecord>& records,
                                      const std::vector<MrSpec>& specs,
                                      double tolerance = kDefaultTolerance) {
  std::vector<Verdict> out;
  out.reserve(records.size());
  for (const ExecutionRecord& r : records) {
    Relation rel = expected_relation(r.mr);
    for (const MrSpec& spec : specs)
      if (spec.id == r.mr) {
        rel = spec.relation;
        break;
      }
    out.push_back(check(r, rel, tolerance));
  }
  return out;
}

}  // namespace mrtrim

#endif  // MRTRIM_CHECKER_HPP
