#ifndef MRTRIM_MINER_HPP
#define MRTRIM_MINER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mrtrim/canonical.hpp"
#include "mrtrim/checker.hpp"
#include "mrtrim/errors.hpp"

namespace mrtrim {

// Constraint mining: given trials labeled with their verdict status, find
// interpretable predicates over test-data features that separate the labels.
// The hypothesis space is deliberately small and enumerated exhaustively —
// single atoms and two-atom conjunctions — so every emitted rule can be
// checked by hand against the trials.

struct DataFeatures {
  std::uint64_t length = 0;
  std::optional<double> min_val, max_val, sum_val;  // absent for empty input
  bool has_negative = false;
  bool has_zero = false;
  bool has_duplicates = false;
  bool is_empty = true;
  bool all_positive = false;  // non-empty and every element > 0
  bool is_sorted = true;      // non-decreasing; vacuously true when empty

  friend bool operator==(const DataFeatures&, const DataFeatures&) = default;
};

inline DataFeatures featurize(const std::vector<double>& input) {
  DataFeatures f;
  f.length = input.size();
  f.is_empty = input.empty();
  if (input.empty()) return f;

  double mn = input[0], mx = input[0], sum = 0;
  f.all_positive = true;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const double v = input[i];
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    sum += v;
    if (v < 0) f.has_negative = true;
    if (v == 0) f.has_zero = true;
    if (v <= 0) f.all_positive = false;
    if (i > 0 && input[i] < input[i - 1]) f.is_sorted = false;
  }
  f.min_val = mn;
  f.max_val = mx;
  f.sum_val = canonical_round(sum);

  std::vector<double> sorted(input);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) {
      f.has_duplicates = true;
      break;
    }
  return f;
}

/// One predicate atom: a boolean feature (possibly negated) or a numeric
/// threshold test `feature < t` / `feature >= t`. Numeric atoms never match
/// trials where the feature is absent (empty input).
struct Atom {
  std::string feature;
  bool numeric = false;
  bool negated = false;   // boolean atoms
  std::string op = "<";   // numeric atoms: "<" or ">="
  double threshold = 0;

  std::string text() const {
    if (!numeric) return negated ? "not " + feature : feature;
    std::string t;
    if (threshold == std::floor(threshold) && std::abs(threshold) < 1e15)
      t = std::to_string(static_cast<long long>(threshold));
    else
      t = format_number(threshold);
    return feature + " " + op + " " + t;
  }

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.feature == b.feature && a.numeric == b.numeric && a.negated == b.negated &&
           a.op == b.op && a.threshold == b.threshold;
  }
};

namespace miner_detail {

inline bool bool_feature(const DataFeatures& f, const std::string& name) {
  if (name == "all_positive") return f.all_positive;
  if (name == "has_duplicates") return f.has_duplicates;
  if (name == "has_negative") return f.has_negative;
  if (name == "has_zero") return f.has_zero;
  if (name == "is_empty") return f.is_empty;
  if (name == "is_sorted") return f.is_sorted;
  throw ConfigError("unknown boolean feature: '" + name + "'");
}

inline std::optional<double> numeric_feature(const DataFeatures& f, const std::string& name) {
  if (name == "length") return static_cast<double>(f.length);
  if (name == "min_val") return f.min_val;
  if (name == "max_val") return f.max_val;
  if (name == "sum_val") return f.sum_val;
  throw ConfigError("unknown numeric feature: '" + name + "'");
}

}  // namespace miner_detail

inline bool atom_matches(const Atom& a, const DataFeatures& f) {
  if (!a.numeric) {
    const bool v = miner_detail::bool_feature(f, a.feature);
    return a.negated ? !v : v;
  }
  const std::optional<double> v = miner_detail::numeric_feature(f, a.feature);
  if (!v) return false;
  return a.op == "<" ? *v < a.threshold : *v >= a.threshold;
}

/// An induced rule: conjunction of atoms (empty = "true") predicting one
/// verdict status. support counts matching trials with that status;
/// precision is support over all matches, recall support over all trials
/// with the status.
struct ConstraintRule {
  std::vector<Atom> atoms;
  VerdictStatus predicted = VerdictStatus::kNonViolation;
  std::uint64_t support = 0;
  double precision = 0;
  double recall = 0;

  std::string predicate_text() const {
    if (atoms.empty()) return "true";
    std::string s = atoms[0].text();
    for (std::size_t i = 1; i < atoms.size(); ++i) s += " and " + atoms[i].text();
    return s;
  }

  bool matches(const DataFeatures& f) const {
    for (const Atom& a : atoms)
      if (!atom_matches(a, f)) return false;
    return true;
  }

  friend bool operator==(const ConstraintRule&, const ConstraintRule&) = default;
};

using LabeledTrial = std::pair<DataFeatures, VerdictStatus>;

namespace miner_detail {

using Mask = std::vector<std::uint64_t>;

inline std::uint64_t popcount_and(const Mask& a, const Mask& b) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    n += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i]));
  return n;
}

inline std::uint64_t popcount_and3(const Mask& a, const Mask& b, const Mask& c) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    n += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i] & c[i]));
  return n;
}

inline std::vector<Atom> enumerate_atoms(const std::vector<LabeledTrial>& trials) {
  std::vector<Atom> atoms;
  for (const char* name : {"all_positive", "has_duplicates", "has_negative", "has_zero",
                           "is_empty", "is_sorted"}) {
    atoms.push_back(Atom{name, false, false, "<", 0});
    atoms.push_back(Atom{name, false, true, "<", 0});
  }
  for (const char* name : {"length", "max_val", "min_val", "sum_val"}) {
    std::set<double> observed;
    for (const LabeledTrial& t : trials)
      if (auto v = numeric_feature(t.first, name)) observed.insert(*v);
    for (double v : observed) {
      atoms.push_back(Atom{name, true, false, "<", v});
      atoms.push_back(Atom{name, true, false, ">=", v});
    }
  }
  return atoms;
}

struct RuleOrder {
  bool operator()(const ConstraintRule& a, const ConstraintRule& b) const {
    if (a.precision != b.precision) return a.precision > b.precision;
    if (a.recall != b.recall) return a.recall > b.recall;
    if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size();
    const std::string ta = a.predicate_text(), tb = b.predicate_text();
    if (ta != tb) return ta < tb;
    return std::string(verdict_status_name(a.predicted)) <
           std::string(verdict_status_name(b.predicted));
  }
};

}  // namespace miner_detail

/// Exhaustively scores every atom and every two-atom conjunction against the
/// labeled trials and returns the rules meeting both bars, best first:
/// precision, then recall, then fewer atoms, ties broken by predicate text.
/// If all trials share one status the single rule "true -> status" covers it.
inline std::vector<ConstraintRule> mine(const std::vector<LabeledTrial>& trials,
                                        double min_precision = 0.95,
                                        std::uint64_t min_support = 5) {
  if (trials.empty()) throw ConfigError("mine: empty trial list");
  if (!(min_precision > 0 && min_precision <= 1))
    throw ConfigError("mine: min_precision must be in (0, 1]");

  const std::array<VerdictStatus, 3> statuses = {
      VerdictStatus::kNonViolation, VerdictStatus::kViolation, VerdictStatus::kInvalid};
  std::array<std::uint64_t, 3> label_total{};
  for (const LabeledTrial& t : trials) ++label_total[static_cast<std::size_t>(t.second)];

  {
    int present = 0;
    VerdictStatus only = VerdictStatus::kNonViolation;
    for (std::size_t s = 0; s < 3; ++s)
      if (label_total[s] > 0) {
        ++present;
        only = statuses[s];
      }
    if (present == 1)
      return {ConstraintRule{{}, only, trials.size(), 1.0, 1.0}};
  }

  const std::vector<Atom> atoms = miner_detail::enumerate_atoms(trials);
  const std::size_t words = (trials.size() + 63) / 64;

  std::array<miner_detail::Mask, 3> status_mask;
  for (auto& m : status_mask) m.assign(words, 0);
  for (std::size_t i = 0; i < trials.size(); ++i)
    status_mask[static_cast<std::size_t>(trials[i].second)][i / 64] |= 1ull << (i % 64);

  std::vector<miner_detail::Mask> atom_mask(atoms.size());
  std::vector<std::uint64_t> atom_count(atoms.size(), 0);
  for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
    atom_mask[ai].assign(words, 0);
    for (std::size_t i = 0; i < trials.size(); ++i)
      if (atom_matches(atoms[ai], trials[i].first)) {
        atom_mask[ai][i / 64] |= 1ull << (i % 64);
        ++atom_count[ai];
      }
  }

  std::vector<ConstraintRule> rules;
  // Atoms are materialized into a rule only when it passes both bars, so the
  // hot pair loop stays allocation-free.
  auto consider = [&](std::size_t ai, std::size_t bi, bool pair, std::uint64_t matches,
                      const std::array<std::uint64_t, 3>& per_status) {
    if (matches == 0) return;
    for (std::size_t s = 0; s < 3; ++s) {
      if (per_status[s] < min_support) continue;
      const double precision =
          static_cast<double>(per_status[s]) / static_cast<double>(matches);
      if (precision < min_precision) continue;
      ConstraintRule r;
      r.atoms.push_back(atoms[ai]);
      if (pair) r.atoms.push_back(atoms[bi]);
      r.predicted = statuses[s];
      r.support = per_status[s];
      // Stored at canonical (9 significant digit) resolution so the values
      // survive an artifact round trip unchanged.
      r.precision = canonical_round(precision);
      r.recall = canonical_round(static_cast<double>(per_status[s]) /
                                 static_cast<double>(label_total[s]));
      rules.push_back(std::move(r));
    }
  };

  for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
    std::array<std::uint64_t, 3> per_status{};
    for (std::size_t s = 0; s < 3; ++s)
      per_status[s] = miner_detail::popcount_and(atom_mask[ai], status_mask[s]);
    consider(ai, ai, false, atom_count[ai], per_status);
  }
  for (std::size_t ai = 0; ai + 1 < atoms.size(); ++ai) {
    if (atom_count[ai] < min_support) continue;  // a conjunction only shrinks coverage
    for (std::size_t bi = ai + 1; bi < atoms.size(); ++bi) {
      if (atom_count[bi] < min_support) continue;
      const std::uint64_t matches =
          miner_detail::popcount_and(atom_mask[ai], atom_mask[bi]);
      if (matches < min_support) continue;
      std::array<std::uint64_t, 3> per_status{};
      for (std::size_t s = 0; s < 3; ++s)
        per_status[s] =
            miner_detail::popcount_and3(atom_mask[ai], atom_mask[bi], status_mask[s]);
      consider(ai, bi, true, matches, per_status);
    }
  }

  std::sort(rules.begin(), rules.end(), miner_detail::RuleOrder{});
  return rules;
}

/// Human sentence for the constraints section of the analysis artifact.
inline std::string rule_sentence(const std::string& method, MrId mr,
                                 const ConstraintRule& rule) {
  const std::string when =
      rule.atoms.empty() ? "always" : "when " + rule.predicate_text();
  switch (rule.predicted) {
    case VerdictStatus::kNonViolation:
      return std::string(mr_name(mr)) + " applies to " + method + " " + when;
    case VerdictStatus::kViolation:
      return std::string(mr_name(mr)) + " is violated for " + method + " " + when;
    case VerdictStatus::kInvalid:
      return std::string(mr_name(mr)) + " yields invalid data for " + method + " " + when;
  }
  return "";
}

}  // namespace mrtrim

#endif  // MRTRIM_MINER_HPP
