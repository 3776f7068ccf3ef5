#ifndef MRTRIM_ANALYZER_HPP
#define MRTRIM_ANALYZER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mrtrim/canonical.hpp"
#include "mrtrim/checker.hpp"
#include "mrtrim/errors.hpp"
#include "mrtrim/mr_catalog.hpp"

namespace mrtrim {

// Aggregation follows the 100% rule: an MR is APPLICABLE to a method only if
// every single trial is a non-violation, NOT_APPLICABLE only if every trial
// is a violation, and MIXED otherwise. The thresholds are exact count
// equalities — one counterexample demotes a classification.

enum class Classification { kApplicable, kNotApplicable, kMixed };

inline const char* classification_name(Classification c) {
  switch (c) {
    case Classification::kApplicable: return "APPLICABLE";
    case Classification::kNotApplicable: return "NOT_APPLICABLE";
    case Classification::kMixed: return "MIXED";
  }
  return "?";
}

inline Classification classification_from_name(const std::string& s) {
  for (Classification c : {Classification::kApplicable, Classification::kNotApplicable,
                           Classification::kMixed})
    if (s == classification_name(c)) return c;
  throw SchemaError("unknown classification: '" + s + "'");
}

struct MethodMrReport {
  std::string method;
  MrId mr = MrId::kAdd;
  std::uint64_t n_trials = 0;
  std::uint64_t n_nonviolation = 0;
  std::uint64_t n_violation = 0;
  std::uint64_t n_invalid = 0;
  double pct_nonviolation = 0;
  double pct_violation = 0;
  double pct_invalid = 0;
  Classification classification = Classification::kMixed;

  friend bool operator==(const MethodMrReport&, const MethodMrReport&) = default;
};

namespace analyzer_detail {

inline void finish(MethodMrReport& r) {
  const auto total = static_cast<double>(r.n_trials);
  r.pct_nonviolation = canonical_round(100.0 * static_cast<double>(r.n_nonviolation) / total);
  r.pct_violation = canonical_round(100.0 * static_cast<double>(r.n_violation) / total);
  r.pct_invalid = canonical_round(100.0 * static_cast<double>(r.n_invalid) / total);
  if (r.n_nonviolation == r.n_trials)
    r.classification = Classification::kApplicable;
  else if (r.n_violation == r.n_trials)
    r.classification = Classification::kNotApplicable;
  else
    r.classification = Classification::kMixed;
}

}  // namespace analyzer_detail

/// Folds verdicts into one report per (method, MR) pair present, ordered by
/// method name then MR name — the same order the analysis artifact's nested
/// maps serialize in, so written reports read back in place. Invalid trials
/// count toward n_trials and get their own percentage — they are never folded
/// into the other two.
inline std::vector<MethodMrReport> aggregate(const std::vector<Verdict>& verdicts) {
  if (verdicts.empty()) throw ConfigError("aggregate: empty verdict list");
  std::map<std::pair<std::string, std::string>, MethodMrReport> acc;
  for (const Verdict& v : verdicts) {
    MethodMrReport& r = acc[{v.method, mr_name(v.mr)}];
    if (r.n_trials == 0) {
      r.method = v.method;
      r.mr = v.mr;
    }
    ++r.n_trials;
    switch (v.status) {
      case VerdictStatus::kNonViolation: ++r.n_nonviolation; break;
      case VerdictStatus::kViolation: ++r.n_violation; break;
      case VerdictStatus::kInvalid: ++r.n_invalid; break;
    }
  }
  std::vector<MethodMrReport> out;
  out.reserve(acc.size());
  for (auto& [key, r] : acc) {
    analyzer_detail::finish(r);
    out.push_back(std::move(r));
  }
  return out;
}

// --- ground-truth comparison ------------------------------------------------

enum class GtAssessment { kConfirmed, kFullyIncorrect, kPartiallyIncorrectMixed };

inline const char* gt_assessment_name(GtAssessment a) {
  switch (a) {
    case GtAssessment::kConfirmed: return "GT_CONFIRMED";
    case GtAssessment::kFullyIncorrect: return "GT_FULLY_INCORRECT";
    case GtAssessment::kPartiallyIncorrectMixed: return "GT_PARTIALLY_INCORRECT_MIXED";
  }
  return "?";
}

inline GtAssessment gt_assessment_from_name(const std::string& s) {
  for (GtAssessment a : {GtAssessment::kConfirmed, GtAssessment::kFullyIncorrect,
                         GtAssessment::kPartiallyIncorrectMixed})
    if (s == gt_assessment_name(a)) return a;
  throw SchemaError("unknown GT assessment: '" + s + "'");
}

/// Prior expectation for one pair: 1 = the MR always applies, 0 = it doesn't.
struct GtExpectation {
  std::string method;
  MrId mr = MrId::kAdd;
  int expected = 1;

  friend bool operator==(const GtExpectation&, const GtExpectation&) = default;
};

struct GtRow {
  std::string method;
  MrId mr = MrId::kAdd;
  int expected = 1;
  GtAssessment assessment = GtAssessment::kConfirmed;

  friend bool operator==(const GtRow&, const GtRow&) = default;
};

/// Scores each expectation against the observed report: a 100% rate in the
/// expected direction confirms it, a 0% rate refutes it fully, anything in
/// between is partially incorrect (mixed). Missing reports throw LookupError.
/// Rows come back ordered by method name then MR name, matching the artifact.
inline std::vector<GtRow> compare_to_groundtruth(const std::vector<MethodMrReport>& reports,
                                                 const std::vector<GtExpectation>& gt) {
  std::vector<GtRow> out;
  out.reserve(gt.size());
  for (const GtExpectation& e : gt) {
    const MethodMrReport* found = nullptr;
    for (const MethodMrReport& r : reports)
      if (r.method == e.method && r.mr == e.mr) {
        found = &r;
        break;
      }
    if (!found)
      throw LookupError("no report for (" + e.method + ", " + mr_name(e.mr) + ")");
    const std::uint64_t hits = e.expected == 1 ? found->n_nonviolation : found->n_violation;
    GtRow row{e.method, e.mr, e.expected, GtAssessment::kPartiallyIncorrectMixed};
    if (hits == found->n_trials)
      row.assessment = GtAssessment::kConfirmed;
    else if (hits == 0)
      row.assessment = GtAssessment::kFullyIncorrect;
    out.push_back(row);
  }
  std::sort(out.begin(), out.end(), [](const GtRow& a, const GtRow& b) {
    return std::make_pair(a.method, std::string(mr_name(a.mr))) <
           std::make_pair(b.method, std::string(mr_name(b.mr)));
  });
  return out;
}

// --- human-readable table ----------------------------------------------------

/// Method x MR grid. Cells show "(check)nonviolation% (cross)violation%" with
/// the invalid percentage in parentheses when present, echoing the way mixed
/// results are usually tabulated.
inline std::string render_table(const std::vector<MethodMrReport>& reports) {
  std::map<std::string, std::map<std::size_t, const MethodMrReport*>> grid;
  for (const MethodMrReport& r : reports)
    grid[r.method][static_cast<std::size_t>(r.mr)] = &r;

  auto cell = [](const MethodMrReport* r) -> std::string {
    if (!r) return "-";
    auto pct = [](double p) {
      return std::to_string(static_cast<long long>(std::llround(p)));
    };
    std::string s = "✓" + pct(r->pct_nonviolation) + " ✗" + pct(r->pct_violation);
    if (r->n_invalid > 0) s += " (" + pct(r->pct_invalid) + ")";
    return s;
  };
  auto display_width = [](const std::string& s) {
    std::size_t w = 0;  // count code points, not bytes (the marks are 3 bytes)
    for (char c : s)
      if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++w;
    return w;
  };

  std::size_t method_w = std::string("method").size();
  for (const auto& [name, row] : grid) method_w = std::max(method_w, name.size());
  std::array<std::size_t, kAllMrs.size()> col_w{};
  for (std::size_t i = 0; i < kAllMrs.size(); ++i) col_w[i] = std::string(mr_name(kAllMrs[i])).size();
  for (const auto& [name, row] : grid)
    for (std::size_t i = 0; i < kAllMrs.size(); ++i) {
      auto it = row.find(i);
      col_w[i] = std::max(col_w[i], display_width(cell(it == row.end() ? nullptr : it->second)));
    }

  std::string out = "method";
  out.append(method_w - 6, ' ');
  for (std::size_t i = 0; i < kAllMrs.size(); ++i) {
    out += "  ";
    const std::string h = mr_name(kAllMrs[i]);
    out += h;
    out.append(col_w[i] - h.size(), ' ');
  }
  out += '\n';
  for (const auto& [name, row] : grid) {
    out += name;
    out.append(method_w - name.size(), ' ');
    for (std::size_t i = 0; i < kAllMrs.size(); ++i) {
      auto it = row.find(i);
      const std::string c = cell(it == row.end() ? nullptr : it->second);
      out += "  ";
      out += c;
      out.append(col_w[i] - display_width(c), ' ');
    }
    out += '\n';
  }
  return out;
}

}  // namespace mrtrim

#endif  // MRTRIM_ANALYZER_HPP
