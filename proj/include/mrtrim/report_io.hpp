#ifndef MRTRIM_REPORT_IO_HPP
#define MRTRIM_REPORT_IO_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrtrim/analyzer.hpp"
#include "mrtrim/canonical.hpp"
#include "mrtrim/checker.hpp"
#include "mrtrim/errors.hpp"
#include "mrtrim/miner.hpp"
#include "mrtrim/mr_catalog.hpp"
#include "mrtrim/runner.hpp"
#include "mrtrim/runner_types.hpp"
#include "mrtrim/sut_corpus.hpp"
#include "mrtrim/tdgen.hpp"
#include "mrtrim/version.hpp"

namespace mrtrim {

// Artifact files are canonical JSON: object keys sorted, compact separators,
// canonical number text (see canonical.hpp), newline-terminated, UTF-8.
// Equal payloads serialize to byte-identical files, which is what the
// reproducibility tests compare. Readers validate shape and version and
// fail closed: no partial payloads.

enum class ArtifactKind { kTd, kTransformed, kExecution, kAnalysis };

inline const char* artifact_slug(ArtifactKind k) {
  switch (k) {
    case ArtifactKind::kTd: return "td";
    case ArtifactKind::kTransformed: return "transformed";
    case ArtifactKind::kExecution: return "execution";
    case ArtifactKind::kAnalysis: return "analysis";
  }
  return "?";
}

inline std::string schema_id(ArtifactKind k) {
  return std::string("mrtrim/") + artifact_slug(k) + "/v1";
}

// --- canonical serialization -------------------------------------------------

namespace io_detail {

inline void emit_string(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

inline void emit(const nlohmann::json& j, std::string& out) {
  using value_t = nlohmann::json::value_t;
  switch (j.type()) {
    case value_t::null: out += "null"; break;
    case value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); break;
    case value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); break;
    case value_t::number_float: out += format_number(j.get<double>()); break;
    case value_t::string: emit_string(j.get_ref<const std::string&>(), out); break;
    case value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ',';
        first = false;
        emit(el, out);
      }
      out += ']';
      break;
    }
    case value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted
        if (!first) out += ',';
        first = false;
        emit_string(it.key(), out);
        out += ':';
        emit(it.value(), out);
      }
      out += '}';
      break;
    }
    default: throw SchemaError("unsupported JSON value type");
  }
}

}  // namespace io_detail

/// Canonical text of a JSON document, newline-terminated.
inline std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  io_detail::emit(j, out);
  out += '\n';
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw SchemaError("cannot open for writing: " + path);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.flush();
  if (!f) throw SchemaError("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SchemaError("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline nlohmann::json parse_json(const std::string& text, const std::string& where) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError(where + ": not valid JSON");
  return j;
}

// --- schema/shape helpers ----------------------------------------------------

namespace io_detail {

inline const nlohmann::json& member(const nlohmann::json& j, const char* key,
                                    const std::string& ctx) {
  if (!j.is_object()) throw SchemaError(ctx + ": expected object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(ctx + "." + key + ": missing field");
  return *it;
}

inline double as_number(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_number()) throw SchemaError(ctx + ": expected number");
  return j.get<double>();
}

inline std::uint64_t as_uint(const nlohmann::json& j, const std::string& ctx) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  throw SchemaError(ctx + ": expected non-negative integer");
}

inline const std::string& as_string(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_string()) throw SchemaError(ctx + ": expected string");
  return j.get_ref<const std::string&>();
}

inline bool as_bool(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_boolean()) throw SchemaError(ctx + ": expected boolean");
  return j.get<bool>();
}

inline const nlohmann::json& as_array(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_array()) throw SchemaError(ctx + ": expected array");
  return j;
}

inline const nlohmann::json& as_object(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_object()) throw SchemaError(ctx + ": expected object");
  return j;
}

inline MrId mr_checked(const std::string& name, const std::string& ctx) {
  try {
    return mr_from_name(name);
  } catch (const ConfigError&) {
    throw SchemaError(ctx + ": unknown MR '" + name + "'");
  }
}

inline std::vector<double> as_values(const nlohmann::json& j, const std::string& ctx) {
  const auto& arr = as_array(j, ctx);
  std::vector<double> out;
  out.reserve(arr.size());
  std::size_t i = 0;
  for (const auto& el : arr) {
    out.push_back(as_number(el, ctx + "[" + std::to_string(i) + "]"));
    ++i;
  }
  return out;
}

}  // namespace io_detail

inline void verify_schema(const nlohmann::json& doc, ArtifactKind kind,
                          const std::string& where) {
  const std::string& id =
      io_detail::as_string(io_detail::member(doc, "schema", where), where + ".schema");
  const std::string expected = schema_id(kind);
  if (id == expected) return;
  const std::string prefix = std::string("mrtrim/") + artifact_slug(kind) + "/v";
  if (id.rfind(prefix, 0) == 0)
    throw SchemaError(where + ".schema: unsupported version '" + id + "' (expected '" +
                      expected + "')");
  throw SchemaError(where + ".schema: expected '" + expected + "', got '" + id + "'");
}

// --- config / params ---------------------------------------------------------

inline nlohmann::json json_of_config(const FuzzConfig& c) {
  nlohmann::json budget;
  if (const auto* count = std::get_if<CountBudget>(&c.budget))
    budget = nlohmann::json{{"count", count->count}};
  else
    budget = nlohmann::json{{"seconds", std::get<DurationBudget>(c.budget).seconds}};
  return nlohmann::json{
      {"budget", budget},
      {"high", c.high},
      {"input_type", input_type_name(c.input_type)},
      {"low", c.low},
      {"max_len", static_cast<std::uint64_t>(c.max_len)},
      {"min_len", static_cast<std::uint64_t>(c.min_len)},
      {"seed", c.seed},
  };
}

inline FuzzConfig config_of_json(const nlohmann::json& j, const std::string& ctx) {
  using io_detail::as_number;
  using io_detail::as_string;
  using io_detail::as_uint;
  using io_detail::member;
  FuzzConfig c;
  c.low = as_number(member(j, "low", ctx), ctx + ".low");
  c.high = as_number(member(j, "high", ctx), ctx + ".high");
  const std::string& it = as_string(member(j, "input_type", ctx), ctx + ".input_type");
  if (it == "int")
    c.input_type = InputType::kInt;
  else if (it == "float")
    c.input_type = InputType::kFloat;
  else
    throw SchemaError(ctx + ".input_type: unknown value '" + it + "'");
  const nlohmann::json& b = member(j, "budget", ctx);
  if (b.contains("count"))
    c.budget = CountBudget{as_uint(b["count"], ctx + ".budget.count")};
  else if (b.contains("seconds"))
    c.budget = DurationBudget{as_number(b["seconds"], ctx + ".budget.seconds")};
  else
    throw SchemaError(ctx + ".budget: expected 'count' or 'seconds'");
  c.min_len = static_cast<std::size_t>(as_uint(member(j, "min_len", ctx), ctx + ".min_len"));
  c.max_len = static_cast<std::size_t>(as_uint(member(j, "max_len", ctx), ctx + ".max_len"));
  c.seed = as_uint(member(j, "seed", ctx), ctx + ".seed");
  return c;
}

inline nlohmann::json json_of_params(const MrParams& p) {
  return nlohmann::json{{"add_constant", p.add_constant}, {"mul_factor", p.mul_factor}};
}

inline MrParams params_of_json(const nlohmann::json& j, const std::string& ctx) {
  MrParams p;
  p.add_constant =
      io_detail::as_number(io_detail::member(j, "add_constant", ctx), ctx + ".add_constant");
  p.mul_factor =
      io_detail::as_number(io_detail::member(j, "mul_factor", ctx), ctx + ".mul_factor");
  return p;
}

// --- TD artifact (a) ----------------------------------------------------------

struct TdArtifact {
  FuzzConfig config;
  std::vector<TestDatum> data;

  friend bool operator==(const TdArtifact&, const TdArtifact&) = default;
};

inline nlohmann::json json_of_td(const TdArtifact& a) {
  nlohmann::json data = nlohmann::json::array();
  for (const TestDatum& d : a.data)
    data.push_back(nlohmann::json{{"id", d.id}, {"values", d.values}});
  return nlohmann::json{
      {"config", json_of_config(a.config)},
      {"data", data},
      {"schema", schema_id(ArtifactKind::kTd)},
  };
}

inline TdArtifact td_of_json(const nlohmann::json& doc) {
  verify_schema(doc, ArtifactKind::kTd, "$");
  TdArtifact a;
  a.config = config_of_json(io_detail::member(doc, "config", "$"), "$.config");
  const auto& data = io_detail::as_array(io_detail::member(doc, "data", "$"), "$.data");
  a.data.reserve(data.size());
  std::size_t i = 0;
  for (const auto& el : data) {
    const std::string ctx = "$.data[" + std::to_string(i) + "]";
    TestDatum d;
    d.id = io_detail::as_uint(io_detail::member(el, "id", ctx), ctx + ".id");
    d.values = io_detail::as_values(io_detail::member(el, "values", ctx), ctx + ".values");
    a.data.push_back(std::move(d));
    ++i;
  }
  return a;
}

inline void write_td(const TdArtifact& a, const std::string& path) {
  write_text_file(path, canonical_dump(json_of_td(a)));
}

inline TdArtifact read_td(const std::string& path) {
  return td_of_json(parse_json(read_text_file(path), path));
}

// --- TRANSFORMED artifact (b) ---------------------------------------------------

inline nlohmann::json json_of_transformed(const TransformedBundle& b) {
  nlohmann::json entries = nlohmann::json::array();
  for (const TransformedEntry& e : b.entries) {
    // The "seven fields" shape: the original datum plus one field per MR.
    nlohmann::json row{
        {"td", nlohmann::json{{"id", e.datum.id}, {"values", e.datum.values}}}};
    for (MrId mr : kAllMrs) {
      const auto& variant = e.variants[mr_index(mr)];
      row[mr_name(mr)] = variant.has_value() ? nlohmann::json(*variant)
                                             : nlohmann::json(nullptr);
    }
    entries.push_back(std::move(row));
  }
  return nlohmann::json{
      {"config", json_of_config(b.config)},
      {"entries", entries},
      {"params", json_of_params(b.params)},
      {"schema", schema_id(ArtifactKind::kTransformed)},
  };
}

inline TransformedBundle transformed_of_json(const nlohmann::json& doc) {
  verify_schema(doc, ArtifactKind::kTransformed, "$");
  TransformedBundle b;
  b.config = config_of_json(io_detail::member(doc, "config", "$"), "$.config");
  b.params = params_of_json(io_detail::member(doc, "params", "$"), "$.params");
  const auto& entries =
      io_detail::as_array(io_detail::member(doc, "entries", "$"), "$.entries");
  b.entries.reserve(entries.size());
  std::size_t i = 0;
  for (const auto& el : entries) {
    const std::string ctx = "$.entries[" + std::to_string(i) + "]";
    TransformedEntry e;
    const nlohmann::json& td = io_detail::member(el, "td", ctx);
    e.datum.id = io_detail::as_uint(io_detail::member(td, "id", ctx + ".td"), ctx + ".td.id");
    e.datum.values = io_detail::as_values(io_detail::member(td, "values", ctx + ".td"),
                                          ctx + ".td.values");
    for (MrId mr : kAllMrs) {
      const nlohmann::json& v = io_detail::member(el, mr_name(mr), ctx);
      if (!v.is_null())
        e.variants[mr_index(mr)] = io_detail::as_values(v, ctx + "." + mr_name(mr));
    }
    b.entries.push_back(std::move(e));
    ++i;
  }
  return b;
}

inline void write_transformed(const TransformedBundle& b, const std::string& path) {
  write_text_file(path, canonical_dump(json_of_transformed(b)));
}

inline TransformedBundle read_transformed(const std::string& path) {
  return transformed_of_json(parse_json(read_text_file(path), path));
}

// --- EXECUTION artifact (c/d) ----------------------------------------------------

/// One record, optionally carrying its verdict (artifact (d) adds it).
struct ExecutionRow {
  ExecutionRecord record;
  std::optional<Verdict> verdict;

  friend bool operator==(const ExecutionRow&, const ExecutionRow&) = default;
};

struct ExecutionArtifact {
  std::string method;
  std::vector<ExecutionRow> rows;

  friend bool operator==(const ExecutionArtifact&, const ExecutionArtifact&) = default;
};

inline nlohmann::json json_of_outcome(const ExecutionOutcome& o) {
  if (o.is_value()) return nlohmann::json{{"value", o.value()}};
  return nlohmann::json{{"failure",
                         nlohmann::json{{"kind", failure_kind_name(o.failure().kind)},
                                        {"message", o.failure().message}}}};
}

inline ExecutionOutcome outcome_of_json(const nlohmann::json& j, const std::string& ctx) {
  if (j.contains("value"))
    return ExecutionOutcome::of(io_detail::as_number(j["value"], ctx + ".value"));
  if (j.contains("failure")) {
    const nlohmann::json& f = j["failure"];
    const std::string& kind =
        io_detail::as_string(io_detail::member(f, "kind", ctx + ".failure"),
                             ctx + ".failure.kind");
    FailureKind k;
    try {
      k = failure_kind_from_name(kind);
    } catch (const SchemaError&) {
      throw SchemaError(ctx + ".failure.kind: unknown kind '" + kind + "'");
    }
    return ExecutionOutcome::fail(
        k, io_detail::as_string(io_detail::member(f, "message", ctx + ".failure"),
                                ctx + ".failure.message"));
  }
  throw SchemaError(ctx + ": expected 'value' or 'failure'");
}

inline nlohmann::json json_of_execution(const ExecutionArtifact& a) {
  nlohmann::json records = nlohmann::json::array();
  for (const ExecutionRow& row : a.rows) {
    const ExecutionRecord& r = row.record;
    nlohmann::json rec{
        {"exec_id", r.exec_id},
        {"followup_input",
         r.followup_input ? nlohmann::json(*r.followup_input) : nlohmann::json(nullptr)},
        {"followup_outcome", r.followup_outcome ? json_of_outcome(*r.followup_outcome)
                                                : nlohmann::json(nullptr)},
        {"mr", mr_name(r.mr)},
        {"source_input", r.source_input},
        {"source_outcome", json_of_outcome(r.source_outcome)},
    };
    if (row.verdict) {
      rec["verdict"] = verdict_status_name(row.verdict->status);
      rec["verdict_detail"] = row.verdict->detail;
    }
    records.push_back(std::move(rec));
  }
  return nlohmann::json{
      {"method", a.method},
      {"records", records},
      {"schema", schema_id(ArtifactKind::kExecution)},
  };
}

inline ExecutionArtifact execution_of_json(const nlohmann::json& doc) {
  verify_schema(doc, ArtifactKind::kExecution, "$");
  ExecutionArtifact a;
  a.method = io_detail::as_string(io_detail::member(doc, "method", "$"), "$.method");
  const auto& records =
      io_detail::as_array(io_detail::member(doc, "records", "$"), "$.records");
  a.rows.reserve(records.size());
  std::size_t i = 0;
  for (const auto& el : records) {
    const std::string ctx = "$.records[" + std::to_string(i) + "]";
    ExecutionRow row;
    ExecutionRecord& r = row.record;
    r.exec_id = io_detail::as_uint(io_detail::member(el, "exec_id", ctx), ctx + ".exec_id");
    r.method = a.method;
    r.mr = io_detail::mr_checked(
        io_detail::as_string(io_detail::member(el, "mr", ctx), ctx + ".mr"), ctx + ".mr");
    r.source_input =
        io_detail::as_values(io_detail::member(el, "source_input", ctx), ctx + ".source_input");
    r.source_outcome =
        outcome_of_json(io_detail::member(el, "source_outcome", ctx), ctx + ".source_outcome");
    const nlohmann::json& fi = io_detail::member(el, "followup_input", ctx);
    if (!fi.is_null()) r.followup_input = io_detail::as_values(fi, ctx + ".followup_input");
    const nlohmann::json& fo = io_detail::member(el, "followup_outcome", ctx);
    if (!fo.is_null()) r.followup_outcome = outcome_of_json(fo, ctx + ".followup_outcome");
    if (r.followup_input.has_value() != r.followup_outcome.has_value())
      throw SchemaError(ctx + ": followup_input and followup_outcome must be present together");
    if (el.contains("verdict")) {
      Verdict v;
      v.exec_id = r.exec_id;
      v.method = a.method;
      v.mr = r.mr;
      const std::string& status = io_detail::as_string(el["verdict"], ctx + ".verdict");
      try {
        v.status = verdict_status_from_name(status);
      } catch (const SchemaError&) {
        throw SchemaError(ctx + ".verdict: unknown status '" + status + "'");
      }
      v.detail = io_detail::as_string(io_detail::member(el, "verdict_detail", ctx),
                                      ctx + ".verdict_detail");
      row.verdict = std::move(v);
    }
    a.rows.push_back(std::move(row));
    ++i;
  }
  return a;
}

inline void write_execution(const ExecutionArtifact& a, const std::string& path) {
  write_text_file(path, canonical_dump(json_of_execution(a)));
}

inline ExecutionArtifact read_execution(const std::string& path) {
  return execution_of_json(parse_json(read_text_file(path), path));
}

// --- ANALYSIS artifact (e) -----------------------------------------------------

/// Everything needed to replay the run (timestamps excluded from comparison).
struct RunManifest {
  std::string tool_version = kToolVersion;
  FuzzConfig config;
  MrParams params;
  std::vector<std::string> methods;
  std::string created_at;
  std::map<std::string, std::string> artifacts;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

struct PairConstraints {
  std::string method;
  MrId mr = MrId::kAdd;
  std::vector<ConstraintRule> rules;

  friend bool operator==(const PairConstraints&, const PairConstraints&) = default;
};

struct AnalysisArtifact {
  RunManifest manifest;
  std::vector<MethodMrReport> reports;
  std::vector<GtRow> gt;
  std::vector<PairConstraints> constraints;

  friend bool operator==(const AnalysisArtifact&, const AnalysisArtifact&) = default;
};

inline nlohmann::json json_of_manifest(const RunManifest& m) {
  return nlohmann::json{
      {"artifacts", m.artifacts},
      {"config", json_of_config(m.config)},
      {"created_at", m.created_at},
      {"methods", m.methods},
      {"params", json_of_params(m.params)},
      {"tool_version", m.tool_version},
  };
}

inline RunManifest manifest_of_json(const nlohmann::json& j, const std::string& ctx) {
  RunManifest m;
  m.tool_version =
      io_detail::as_string(io_detail::member(j, "tool_version", ctx), ctx + ".tool_version");
  m.config = config_of_json(io_detail::member(j, "config", ctx), ctx + ".config");
  m.params = params_of_json(io_detail::member(j, "params", ctx), ctx + ".params");
  m.created_at =
      io_detail::as_string(io_detail::member(j, "created_at", ctx), ctx + ".created_at");
  const auto& methods =
      io_detail::as_array(io_detail::member(j, "methods", ctx), ctx + ".methods");
  for (const auto& el : methods)
    m.methods.push_back(io_detail::as_string(el, ctx + ".methods[]"));
  const auto& artifacts =
      io_detail::as_object(io_detail::member(j, "artifacts", ctx), ctx + ".artifacts");
  for (auto it = artifacts.begin(); it != artifacts.end(); ++it)
    m.artifacts[it.key()] =
        io_detail::as_string(it.value(), ctx + ".artifacts." + it.key());
  return m;
}

inline nlohmann::json json_of_atom(const Atom& a) {
  if (!a.numeric) return nlohmann::json{{"feature", a.feature}, {"negated", a.negated}};
  return nlohmann::json{{"feature", a.feature}, {"op", a.op}, {"threshold", a.threshold}};
}

inline Atom atom_of_json(const nlohmann::json& j, const std::string& ctx) {
  Atom a;
  a.feature = io_detail::as_string(io_detail::member(j, "feature", ctx), ctx + ".feature");
  if (j.contains("op")) {
    a.numeric = true;
    a.op = io_detail::as_string(j["op"], ctx + ".op");
    if (a.op != "<" && a.op != ">=")
      throw SchemaError(ctx + ".op: expected '<' or '>='");
    a.threshold =
        io_detail::as_number(io_detail::member(j, "threshold", ctx), ctx + ".threshold");
  } else {
    a.negated = io_detail::as_bool(io_detail::member(j, "negated", ctx), ctx + ".negated");
  }
  return a;
}

inline nlohmann::json json_of_rule(const std::string& method, MrId mr,
                                   const ConstraintRule& r) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : r.atoms) atoms.push_back(json_of_atom(a));
  return nlohmann::json{
      {"atoms", atoms},
      {"precision", r.precision},
      {"predicate", r.predicate_text()},
      {"predicted_status", verdict_status_name(r.predicted)},
      {"recall", r.recall},
      {"sentence", rule_sentence(method, mr, r)},
      {"support", r.support},
  };
}

inline ConstraintRule rule_of_json(const nlohmann::json& j, const std::string& ctx) {
  ConstraintRule r;
  const auto& atoms = io_detail::as_array(io_detail::member(j, "atoms", ctx), ctx + ".atoms");
  std::size_t i = 0;
  for (const auto& el : atoms) {
    r.atoms.push_back(atom_of_json(el, ctx + ".atoms[" + std::to_string(i) + "]"));
    ++i;
  }
  const std::string& status = io_detail::as_string(
      io_detail::member(j, "predicted_status", ctx), ctx + ".predicted_status");
  try {
    r.predicted = verdict_status_from_name(status);
  } catch (const SchemaError&) {
    throw SchemaError(ctx + ".predicted_status: unknown status '" + status + "'");
  }
  r.support = io_detail::as_uint(io_detail::member(j, "support", ctx), ctx + ".support");
  r.precision =
      io_detail::as_number(io_detail::member(j, "precision", ctx), ctx + ".precision");
  r.recall = io_detail::as_number(io_detail::member(j, "recall", ctx), ctx + ".recall");
  io_detail::as_string(io_detail::member(j, "predicate", ctx), ctx + ".predicate");
  io_detail::as_string(io_detail::member(j, "sentence", ctx), ctx + ".sentence");
  return r;
}

inline nlohmann::json json_of_analysis(const AnalysisArtifact& a) {
  nlohmann::json reports = nlohmann::json::object();
  for (const MethodMrReport& r : a.reports) {
    reports[r.method][mr_name(r.mr)] = nlohmann::json{
        {"classification", classification_name(r.classification)},
        {"n_invalid", r.n_invalid},
        {"n_nonviolation", r.n_nonviolation},
        {"n_trials", r.n_trials},
        {"n_violation", r.n_violation},
        {"pct_invalid", r.pct_invalid},
        {"pct_nonviolation", r.pct_nonviolation},
        {"pct_violation", r.pct_violation},
    };
  }
  nlohmann::json gt = nlohmann::json::object();
  for (const GtRow& row : a.gt)
    gt[row.method][mr_name(row.mr)] = nlohmann::json{
        {"assessment", gt_assessment_name(row.assessment)},
        {"expected", row.expected},
    };
  nlohmann::json constraints = nlohmann::json::object();
  for (const PairConstraints& pc : a.constraints) {
    nlohmann::json rules = nlohmann::json::array();
    for (const ConstraintRule& r : pc.rules) rules.push_back(json_of_rule(pc.method, pc.mr, r));
    constraints[pc.method][mr_name(pc.mr)] = std::move(rules);
  }
  return nlohmann::json{
      {"constraints", constraints},
      {"gt", gt},
      {"manifest", json_of_manifest(a.manifest)},
      {"reports", reports},
      {"schema", schema_id(ArtifactKind::kAnalysis)},
  };
}

inline AnalysisArtifact analysis_of_json(const nlohmann::json& doc) {
  verify_schema(doc, ArtifactKind::kAnalysis, "$");
  AnalysisArtifact a;
  a.manifest = manifest_of_json(io_detail::member(doc, "manifest", "$"), "$.manifest");

  const auto& reports =
      io_detail::as_object(io_detail::member(doc, "reports", "$"), "$.reports");
  for (auto mit = reports.begin(); mit != reports.end(); ++mit) {
    const auto& per_mr = io_detail::as_object(mit.value(), "$.reports." + mit.key());
    for (auto rit = per_mr.begin(); rit != per_mr.end(); ++rit) {
      const std::string ctx = "$.reports." + mit.key() + "." + rit.key();
      const nlohmann::json& el = rit.value();
      MethodMrReport r;
      r.method = mit.key();
      r.mr = io_detail::mr_checked(rit.key(), ctx);
      r.n_trials = io_detail::as_uint(io_detail::member(el, "n_trials", ctx), ctx + ".n_trials");
      r.n_nonviolation = io_detail::as_uint(io_detail::member(el, "n_nonviolation", ctx),
                                            ctx + ".n_nonviolation");
      r.n_violation =
          io_detail::as_uint(io_detail::member(el, "n_violation", ctx), ctx + ".n_violation");
      r.n_invalid =
          io_detail::as_uint(io_detail::member(el, "n_invalid", ctx), ctx + ".n_invalid");
      r.pct_nonviolation = io_detail::as_number(io_detail::member(el, "pct_nonviolation", ctx),
                                                ctx + ".pct_nonviolation");
      r.pct_violation = io_detail::as_number(io_detail::member(el, "pct_violation", ctx),
                                             ctx + ".pct_violation");
      r.pct_invalid =
          io_detail::as_number(io_detail::member(el, "pct_invalid", ctx), ctx + ".pct_invalid");
      const std::string& cls = io_detail::as_string(
          io_detail::member(el, "classification", ctx), ctx + ".classification");
      try {
        r.classification = classification_from_name(cls);
      } catch (const SchemaError&) {
        throw SchemaError(ctx + ".classification: unknown value '" + cls + "'");
      }
      a.reports.push_back(std::move(r));
    }
  }

  const auto& gt = io_detail::as_object(io_detail::member(doc, "gt", "$"), "$.gt");
  for (auto mit = gt.begin(); mit != gt.end(); ++mit) {
    const auto& per_mr = io_detail::as_object(mit.value(), "$.gt." + mit.key());
    for (auto git = per_mr.begin(); git != per_mr.end(); ++git) {
      const std::string ctx = "$.gt." + mit.key() + "." + git.key();
      GtRow row;
      row.method = mit.key();
      row.mr = io_detail::mr_checked(git.key(), ctx);
      row.expected = static_cast<int>(
          io_detail::as_uint(io_detail::member(git.value(), "expected", ctx), ctx + ".expected"));
      if (row.expected != 0 && row.expected != 1)
        throw SchemaError(ctx + ".expected: must be 0 or 1");
      const std::string& assessment = io_detail::as_string(
          io_detail::member(git.value(), "assessment", ctx), ctx + ".assessment");
      try {
        row.assessment = gt_assessment_from_name(assessment);
      } catch (const SchemaError&) {
        throw SchemaError(ctx + ".assessment: unknown value '" + assessment + "'");
      }
      a.gt.push_back(std::move(row));
    }
  }

  const auto& constraints =
      io_detail::as_object(io_detail::member(doc, "constraints", "$"), "$.constraints");
  for (auto mit = constraints.begin(); mit != constraints.end(); ++mit) {
    const auto& per_mr = io_detail::as_object(mit.value(), "$.constraints." + mit.key());
    for (auto cit = per_mr.begin(); cit != per_mr.end(); ++cit) {
      const std::string ctx = "$.constraints." + mit.key() + "." + cit.key();
      PairConstraints pc;
      pc.method = mit.key();
      pc.mr = io_detail::mr_checked(cit.key(), ctx);
      const auto& rules = io_detail::as_array(cit.value(), ctx);
      std::size_t i = 0;
      for (const auto& el : rules) {
        pc.rules.push_back(rule_of_json(el, ctx + "[" + std::to_string(i) + "]"));
        ++i;
      }
      a.constraints.push_back(std::move(pc));
    }
  }
  return a;
}

inline void write_analysis(const AnalysisArtifact& a, const std::string& path) {
  write_text_file(path, canonical_dump(json_of_analysis(a)));
}

inline AnalysisArtifact read_analysis(const std::string& path) {
  return analysis_of_json(parse_json(read_text_file(path), path));
}

}  // namespace mrtrim

#endif  // MRTRIM_REPORT_IO_HPP
