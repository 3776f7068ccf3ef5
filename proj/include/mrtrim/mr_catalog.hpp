#ifndef MRTRIM_MR_CATALOG_HPP
#define MRTRIM_MR_CATALOG_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrtrim/canonical.hpp"
#include "mrtrim/errors.hpp"
#include "mrtrim/rng.hpp"
#include "mrtrim/tdgen.hpp"

namespace mrtrim {

// The six pre-defined metamorphic relations. Each pairs an input
// transformation with the relation the follow-up output must satisfy
// against the source output:
//
//   MR_ADD  add a positive constant to every element      -> output >= source
//   MR_MUL  multiply every element by a factor > 1        -> output >= source
//   MR_PER  permute the elements (non-identity when n>=2) -> output == source
//   MR_INV  negate every element                          -> output <= source
//   MR_INC  append one element drawn from the data range  -> output >= source
//   MR_EXC  remove the element at a random index          -> output <= source

enum class MrId { kAdd = 0, kMul, kPer, kInv, kInc, kExc };

inline constexpr std::array<MrId, 6> kAllMrs = {MrId::kAdd, MrId::kMul, MrId::kPer,
                                                MrId::kInv, MrId::kInc, MrId::kExc};

inline const char* mr_name(MrId id) {
  switch (id) {
    case MrId::kAdd: return "MR_ADD";
    case MrId::kMul: return "MR_MUL";
    case MrId::kPer: return "MR_PER";
    case MrId::kInv: return "MR_INV";
    case MrId::kInc: return "MR_INC";
    case MrId::kExc: return "MR_EXC";
  }
  return "MR_?";
}

inline MrId mr_from_name(const std::string& s) {
  for (MrId id : kAllMrs)
    if (s == mr_name(id)) return id;
  throw ConfigError("unknown MR name: '" + s + "'");
}

/// Expected relation of the follow-up output to the source output.
enum class Relation { kEqual, kGeq, kLeq };

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::kEqual: return "EQUAL";
    case Relation::kGeq: return "GEQ";
    case Relation::kLeq: return "LEQ";
  }
  return "?";
}

/// The relation is fixed per MR.
inline constexpr Relation expected_relation(MrId id) {
  switch (id) {
    case MrId::kPer: return Relation::kEqual;
    case MrId::kAdd:
    case MrId::kMul:
    case MrId::kInc: return Relation::kGeq;
    case MrId::kInv:
    case MrId::kExc: return Relation::kLeq;
  }
  return Relation::kEqual;
}

/// Tunable transformation constants, CLI-overridable.
struct MrParams {
  double add_constant = 3.0;  // must be > 0
  double mul_factor = 2.0;    // must be > 1

  void validate() const {
    if (!(add_constant > 0)) throw ConfigError("add_constant must be > 0");
    if (!(mul_factor > 1)) throw ConfigError("mul_factor must be > 1");
  }

  friend bool operator==(const MrParams&, const MrParams&) = default;
};

struct MrSpec {
  MrId id = MrId::kAdd;
  MrParams params;
  Relation relation = Relation::kGeq;

  friend bool operator==(const MrSpec&, const MrSpec&) = default;
};

inline MrSpec make_spec(MrId id, MrParams params = {}) {
  params.validate();
  return MrSpec{id, params, expected_relation(id)};
}

/// All six MRs in catalog order.
inline std::vector<MrSpec> default_specs(MrParams params = {}) {
  std::vector<MrSpec> out;
  out.reserve(kAllMrs.size());
  for (MrId id : kAllMrs) out.push_back(make_spec(id, params));
  return out;
}

/// Element range and type of the data a transformation operates on; MR_INC
/// draws its appended element from here so transformed data stays in regime.
struct ValueDomain {
  double low = 1;
  double high = 50;
  InputType input_type = InputType::kInt;

  static ValueDomain of(const FuzzConfig& c) { return {c.low, c.high, c.input_type}; }
};

struct TransformedDatum {
  std::uint64_t source_id = 0;
  MrId mr = MrId::kAdd;
  std::vector<double> values;

  friend bool operator==(const TransformedDatum&, const TransformedDatum&) = default;
};

namespace detail {

inline double draw_domain_element(RngStream& rng, const ValueDomain& d) {
  if (d.input_type == InputType::kInt) {
    const auto lo = static_cast<std::int64_t>(std::ceil(d.low));
    const auto hi = static_cast<std::int64_t>(std::floor(d.high));
    return static_cast<double>(rng.next_int(lo, hi));
  }
  double v = d.low + rng.next_real01() * (d.high - d.low);
  v = std::round(v * 1e6) / 1e6;
  if (v < d.low) v = d.low;
  if (v > d.high) v = d.high;
  return canonical_round(v);
}

// Fisher-Yates permutation of indices, redrawn until non-identity (n >= 2).
inline std::vector<std::size_t> draw_permutation(RngStream& rng, std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
      std::swap(idx[i - 1], idx[j]);
    }
    if (n < 2) return idx;
    bool identity = true;
    for (std::size_t i = 0; i < n && identity; ++i) identity = idx[i] == i;
    if (!identity) return idx;
  }
}

}  // namespace detail

/// Applies one MR's input transformation to a datum. Never mutates its input.
/// Returns nullopt when the transformation does not apply (MR_EXC on an empty
/// list); the runner records such trials with absent follow-up fields and the
/// checker maps them to INVALID.
inline std::optional<TransformedDatum> transform(const MrSpec& spec, const TestDatum& datum,
                                                 const ValueDomain& domain, RngStream& rng) {
  TransformedDatum out;
  out.source_id = datum.id;
  out.mr = spec.id;

  // ADD/MUL/INV results pass through canonical_round so follow-up values are
  // exactly representable in artifact files (td values already are).
  switch (spec.id) {
    case MrId::kAdd:
      out.values.reserve(datum.values.size());
      for (double v : datum.values)
        out.values.push_back(canonical_round(v + spec.params.add_constant));
      return out;
    case MrId::kMul:
      out.values.reserve(datum.values.size());
      for (double v : datum.values)
        out.values.push_back(canonical_round(v * spec.params.mul_factor));
      return out;
    case MrId::kPer: {
      const auto idx = detail::draw_permutation(rng, datum.values.size());
      out.values.reserve(datum.values.size());
      for (std::size_t i : idx) out.values.push_back(datum.values[i]);
      return out;
    }
    case MrId::kInv:
      out.values.reserve(datum.values.size());
      for (double v : datum.values) out.values.push_back(canonical_round(-v));
      return out;
    case MrId::kInc:
      out.values = datum.values;
      out.values.push_back(detail::draw_domain_element(rng, domain));
      return out;
    case MrId::kExc: {
      if (datum.values.empty()) return std::nullopt;
      const auto drop = static_cast<std::size_t>(rng.next_below(datum.values.size()));
      out.values.reserve(datum.values.size() - 1);
      for (std::size_t i = 0; i < datum.values.size(); ++i)
        if (i != drop) out.values.push_back(datum.values[i]);
      return out;
    }
  }
  return std::nullopt;
}

/// Label of the RNG sub-stream feeding transform(mr, datum). Shared by the
/// transform stage and the in-process runner so both produce identical
/// follow-up data for a given master seed.
inline std::string transform_stream_label(MrId mr, std::uint64_t datum_id) {
  return std::string("transform/") + mr_name(mr) + "/" + std::to_string(datum_id);
}

}  // namespace mrtrim

#endif  // MRTRIM_MR_CATALOG_HPP
