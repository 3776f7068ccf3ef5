#ifndef MRTRIM_PIPELINE_HPP
#define MRTRIM_PIPELINE_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrtrim/analyzer.hpp"
#include "mrtrim/checker.hpp"
#include "mrtrim/errors.hpp"
#include "mrtrim/external_runner.hpp"
#include "mrtrim/miner.hpp"
#include "mrtrim/mr_catalog.hpp"
#include "mrtrim/report_io.hpp"
#include "mrtrim/runner.hpp"
#include "mrtrim/sut_corpus.hpp"
#include "mrtrim/tdgen.hpp"

namespace mrtrim {

// The pipeline is a chain of six file-mediated stages:
//
//   gen -> td.json -> transform -> transformed.json -> run -> exec/<m>.json
//       -> check -> checked/<m>.json -> analyze -> analysis.json -> mine
//
// Every stage reads its input artifact from disk even when driven by
// run_pipeline, so running the stages by hand produces byte-identical
// results to the one-shot command. Artifact names inside a run directory
// are fixed, which keeps manifests (and therefore whole analysis files)
// comparable across run directories.

struct ArtifactLayout {
  std::string dir = "out";

  std::string td() const { return dir + "/td.json"; }
  std::string transformed() const { return dir + "/transformed.json"; }
  std::string exec_dir() const { return dir + "/exec"; }
  std::string checked_dir() const { return dir + "/checked"; }
  std::string analysis() const { return dir + "/analysis.json"; }

  std::string exec_file(const std::string& method) const {
    return exec_dir() + "/" + method + ".json";
  }
  std::string checked_file(const std::string& method) const {
    return checked_dir() + "/" + method + ".json";
  }

  /// Run-relative names recorded in the manifest.
  static std::map<std::string, std::string> names() {
    return {{"analysis", "analysis.json"},
            {"checked", "checked"},
            {"execution", "exec"},
            {"td", "td.json"},
            {"transformed", "transformed.json"}};
  }
};

/// Named parameter bundles for the two reference configurations.
inline FuzzConfig preset_rq1(std::uint64_t seed) {
  FuzzConfig c;
  c.low = 1;
  c.high = 50;
  c.input_type = InputType::kInt;
  c.budget = CountBudget{1000};
  c.min_len = 4;
  c.max_len = 20;
  c.seed = seed;
  return c;
}

inline FuzzConfig preset_rq2(std::uint64_t seed) {
  FuzzConfig c;
  c.low = -15;
  c.high = 15;
  c.input_type = InputType::kInt;
  c.budget = CountBudget{1000};
  c.min_len = 0;
  c.max_len = 20;
  c.seed = seed;
  return c;
}

struct PipelineOptions {
  FuzzConfig config;
  MrParams params;
  std::vector<std::string> methods;  // empty = whole built-in corpus
  std::optional<ExternalSutSpec> external;
  double tolerance = kDefaultTolerance;
  unsigned jobs = 1;
  double min_precision = 0.95;
  std::uint64_t min_support = 5;
  std::size_t max_rules_per_pair = 5;
  std::vector<GtExpectation> gt;
  std::string out_dir = "out";
};

namespace pipeline_detail {

inline std::string now_iso8601_utc() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Method names of the artifacts in a stage directory, sorted.
inline std::vector<std::string> dir_methods(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw SchemaError("not a directory: " + dir);
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path p = entry.path();
    if (p.extension() == ".json") out.push_back(p.stem().string());
  }
  if (out.empty()) throw SchemaError("no artifacts in: " + dir);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pipeline_detail

inline void stage_gen(const FuzzConfig& config, const ArtifactLayout& layout) {
  std::filesystem::create_directories(layout.dir);
  write_td(TdArtifact{config, generate(config)}, layout.td());
}

inline void stage_transform(const ArtifactLayout& layout, const MrParams& params) {
  params.validate();
  const TdArtifact td = read_td(layout.td());
  write_transformed(transform_all(default_specs(params), td.data, td.config),
                    layout.transformed());
}

/// Runs the built-in corpus (or an external SUT) over the transformed bundle
/// and writes one execution artifact per method.
inline std::vector<std::string> stage_run(const ArtifactLayout& layout,
                                          std::vector<std::string> methods, unsigned jobs,
                                          const std::optional<ExternalSutSpec>& external) {
  const TransformedBundle bundle = read_transformed(layout.transformed());
  const std::vector<MrSpec> specs = default_specs(bundle.params);
  std::filesystem::create_directories(layout.exec_dir());

  if (external) {
    const std::vector<ExecutionRecord> records = run_external(*external, specs, bundle);
    ExecutionArtifact artifact;
    artifact.method = external->name;
    artifact.rows.reserve(records.size());
    for (const ExecutionRecord& r : records) artifact.rows.push_back({r, std::nullopt});
    write_execution(artifact, layout.exec_file(external->name));
    return {external->name};
  }

  if (methods.empty())
    for (const MethodDescriptor& d : list_methods()) methods.push_back(d.name);

  const std::vector<ExecutionRecord> records =
      run_transformed(methods, specs, bundle, jobs);
  const std::size_t per_method = specs.size() * bundle.entries.size();
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    ExecutionArtifact artifact;
    artifact.method = methods[mi];
    artifact.rows.reserve(per_method);
    for (std::size_t i = mi * per_method; i < (mi + 1) * per_method; ++i)
      artifact.rows.push_back({records[i], std::nullopt});
    write_execution(artifact, layout.exec_file(methods[mi]));
  }
  return methods;
}

/// Adds verdicts to every execution artifact (exec/ -> checked/).
inline void stage_check(const ArtifactLayout& layout, double tolerance = kDefaultTolerance) {
  if (!(tolerance > 0)) throw ConfigError("tolerance must be > 0");
  const std::vector<std::string> methods =
      pipeline_detail::dir_methods(layout.exec_dir());
  std::filesystem::create_directories(layout.checked_dir());
  for (const std::string& m : methods) {
    ExecutionArtifact artifact = read_execution(layout.exec_file(m));
    for (ExecutionRow& row : artifact.rows)
      row.verdict = check(row.record, expected_relation(row.record.mr), tolerance);
    write_execution(artifact, layout.checked_file(m));
  }
}

/// Aggregates checked artifacts into the analysis artifact (no constraints
/// yet — mining is its own stage).
inline AnalysisArtifact stage_analyze(const ArtifactLayout& layout,
                                      const std::vector<GtExpectation>& gt = {}) {
  const TransformedBundle bundle = read_transformed(layout.transformed());
  const std::vector<std::string> methods =
      pipeline_detail::dir_methods(layout.checked_dir());

  std::vector<Verdict> verdicts;
  for (const std::string& m : methods) {
    const ExecutionArtifact artifact = read_execution(layout.checked_file(m));
    for (const ExecutionRow& row : artifact.rows) {
      if (!row.verdict)
        throw SchemaError(layout.checked_file(m) + ": record " +
                          std::to_string(row.record.exec_id) + " has no verdict");
      verdicts.push_back(*row.verdict);
    }
  }

  AnalysisArtifact a;
  a.reports = aggregate(verdicts);
  if (!gt.empty()) a.gt = compare_to_groundtruth(a.reports, gt);
  a.manifest.tool_version = kToolVersion;
  a.manifest.config = bundle.config;
  a.manifest.params = bundle.params;
  a.manifest.methods = methods;
  a.manifest.created_at = pipeline_detail::now_iso8601_utc();
  a.manifest.artifacts = ArtifactLayout::names();
  write_analysis(a, layout.analysis());
  return a;
}

/// Mines constraint rules for every MIXED (method, MR) pair and rewrites the
/// analysis artifact with the constraints section filled in.
inline AnalysisArtifact stage_mine(const ArtifactLayout& layout, double min_precision = 0.95,
                                   std::uint64_t min_support = 5,
                                   std::size_t max_rules_per_pair = 5) {
  AnalysisArtifact a = read_analysis(layout.analysis());

  // Keyed by (method, MR name) so the vector comes out in the artifact's
  // canonical order and a written-then-read analysis compares equal.
  std::map<std::pair<std::string, std::string>, std::pair<MrId, std::vector<LabeledTrial>>>
      trials;
  for (const MethodMrReport& r : a.reports)
    if (r.classification == Classification::kMixed)
      trials[{r.method, mr_name(r.mr)}] = {r.mr, {}};
  if (!trials.empty()) {
    for (const std::string& m : pipeline_detail::dir_methods(layout.checked_dir())) {
      const ExecutionArtifact artifact = read_execution(layout.checked_file(m));
      for (const ExecutionRow& row : artifact.rows) {
        if (!row.verdict) continue;
        const auto it = trials.find({row.record.method, mr_name(row.record.mr)});
        if (it == trials.end()) continue;
        it->second.second.emplace_back(featurize(row.record.source_input),
                                       row.verdict->status);
      }
    }
  }

  a.constraints.clear();
  for (auto& [key, value] : trials) {
    auto& [mr, pair_trials] = value;
    if (pair_trials.empty()) continue;
    std::vector<ConstraintRule> rules = mine(pair_trials, min_precision, min_support);
    if (rules.size() > max_rules_per_pair) rules.resize(max_rules_per_pair);
    if (rules.empty()) continue;
    PairConstraints pc;
    pc.method = key.first;
    pc.mr = mr;
    pc.rules = std::move(rules);
    a.constraints.push_back(std::move(pc));
  }
  write_analysis(a, layout.analysis());
  return a;
}

/// gen -> transform -> run -> check -> analyze -> mine, all through files.
inline AnalysisArtifact run_pipeline(const PipelineOptions& opts) {
  opts.config.validate();
  opts.params.validate();
  const ArtifactLayout layout{opts.out_dir};
  stage_gen(opts.config, layout);
  stage_transform(layout, opts.params);
  stage_run(layout, opts.methods, opts.jobs, opts.external);
  stage_check(layout, opts.tolerance);
  stage_analyze(layout, opts.gt);
  return stage_mine(layout, opts.min_precision, opts.min_support, opts.max_rules_per_pair);
}

}  // namespace mrtrim

#endif  // MRTRIM_PIPELINE_HPP
