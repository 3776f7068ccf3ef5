// mrtrim command-line tool: each pipeline stage as a subcommand, plus the
// one-shot `pipeline` command and a `methods` listing.
//
// Exit codes: 0 success, 1 unexpected error, 2 configuration error,
// 3 artifact/schema error, 4 SUT lookup/start error.

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrtrim/mrtrim.hpp"

namespace {

using namespace mrtrim;

std::uint64_t resolve_seed(const CLI::App* cmd, std::uint64_t cli_seed) {
  if (cmd->count("--seed") > 0) return cli_seed;
  if (const char* env = std::getenv("MRTRIM_SEED")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos != std::strlen(env)) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(std::string("MRTRIM_SEED is not an unsigned integer: '") + env +
                        "'");
    }
  }
  return cli_seed;
}

std::vector<std::string> split_command(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

void require_filename_safe(const std::string& name) {
  if (name.empty()) throw ConfigError("SUT name must not be empty");
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
      throw ConfigError("SUT name must be filename-safe ([A-Za-z0-9_.-]): '" + name + "'");
}

/// Ground-truth file: {"<method>": {"<MR_NAME>": 0|1, ...}, ...}
std::vector<GtExpectation> load_gt(const std::string& path) {
  const nlohmann::json doc = parse_json(read_text_file(path), path);
  if (!doc.is_object()) throw SchemaError(path + ": expected an object keyed by method");
  std::vector<GtExpectation> out;
  for (auto mit = doc.begin(); mit != doc.end(); ++mit) {
    if (!mit.value().is_object())
      throw SchemaError(path + ": expected an object of MRs under '" + mit.key() + "'");
    for (auto git = mit.value().begin(); git != mit.value().end(); ++git) {
      GtExpectation e;
      e.method = mit.key();
      try {
        e.mr = mr_from_name(git.key());
      } catch (const ConfigError&) {
        throw SchemaError(path + ": unknown MR '" + git.key() + "' under '" + mit.key() +
                          "'");
      }
      if (!git.value().is_number_integer() ||
          (git.value().get<std::int64_t>() != 0 && git.value().get<std::int64_t>() != 1))
        throw SchemaError(path + ": value for " + mit.key() + "/" + git.key() +
                          " must be 0 or 1");
      e.expected = static_cast<int>(git.value().get<std::int64_t>());
      out.push_back(std::move(e));
    }
  }
  return out;
}

struct GenFlags {
  double low = 1, high = 50;
  std::string input_type = "int";
  std::uint64_t count = 1000;
  double duration = 0;
  std::size_t min_len = 2, max_len = 20;
  std::uint64_t seed = 7;
};

void add_gen_flags(CLI::App* cmd, GenFlags& f) {
  cmd->add_option("--low", f.low, "smallest element value");
  cmd->add_option("--high", f.high, "largest element value");
  cmd->add_option("--input-type", f.input_type, "element type: int or float");
  auto* count = cmd->add_option("--count", f.count, "number of data to generate");
  auto* duration =
      cmd->add_option("--duration", f.duration,
                      "generate for this many seconds instead of a fixed count "
                      "(wall clock; not reproducible across machines)");
  count->excludes(duration);
  cmd->add_option("--min-len", f.min_len, "minimum list length");
  cmd->add_option("--max-len", f.max_len, "maximum list length");
  cmd->add_option("--seed", f.seed, "master seed (falls back to MRTRIM_SEED, then 7)");
}

FuzzConfig config_from_flags(const CLI::App* cmd, const GenFlags& f) {
  FuzzConfig c;
  c.low = canonical_round(f.low);
  c.high = canonical_round(f.high);
  c.input_type = input_type_from_name(f.input_type);
  if (cmd->count("--duration") > 0)
    c.budget = DurationBudget{canonical_round(f.duration)};
  else
    c.budget = CountBudget{f.count};
  c.min_len = f.min_len;
  c.max_len = f.max_len;
  c.seed = resolve_seed(cmd, f.seed);
  return c;
}

void apply_preset(FuzzConfig& c, const std::string& preset) {
  if (preset == "rq1")
    c = preset_rq1(c.seed);
  else if (preset == "rq2")
    c = preset_rq2(c.seed);
  else
    throw ConfigError("unknown preset: '" + preset + "' (expected rq1 or rq2)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mrtrim: test-data-driven analysis of metamorphic relations over "
               "numeric list methods"};
  app.require_subcommand(1);

  std::string out_dir = "out";

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate random test data (artifact a)");
  GenFlags gen_flags;
  add_gen_flags(gen, gen_flags);
  gen->add_option("-o,--out-dir", out_dir, "run directory");

  // --- transform ---
  auto* transform =
      app.add_subcommand("transform", "apply the six MRs to every datum (artifact b)");
  MrParams transform_params;
  transform->add_option("--add-constant", transform_params.add_constant,
                        "constant added by MR_ADD (> 0)");
  transform->add_option("--mul-factor", transform_params.mul_factor,
                        "factor applied by MR_MUL (> 1)");
  transform->add_option("-o,--out-dir", out_dir, "run directory");

  // --- run ---
  auto* run = app.add_subcommand(
      "run", "execute source and follow-up data per method (artifacts c)");
  std::vector<std::string> run_methods;
  unsigned run_jobs = 1;
  std::string run_external_cmd, run_sut_name = "external";
  double run_timeout = 2.0;
  run->add_option("--methods", run_methods,
                  "built-in methods to run (default: all)")
      ->delimiter(',');
  run->add_option("-j,--jobs", run_jobs, "worker threads (result is identical)");
  run->add_option("--external", run_external_cmd,
                  "run this program (whitespace-split argv) as the SUT over the "
                  "line-delimited JSON protocol instead of the built-in corpus");
  run->add_option("--sut-name", run_sut_name, "method name recorded for --external");
  run->add_option("--timeout", run_timeout, "per-call timeout for --external, seconds");
  run->add_option("-o,--out-dir", out_dir, "run directory");

  // --- check ---
  auto* check_cmd =
      app.add_subcommand("check", "attach verdicts to every record (artifacts d)");
  double check_tolerance = kDefaultTolerance;
  check_cmd->add_option("--tolerance", check_tolerance,
                        "relative comparison tolerance (floor 1)");
  check_cmd->add_option("-o,--out-dir", out_dir, "run directory");

  // --- analyze ---
  auto* analyze =
      app.add_subcommand("analyze", "aggregate verdicts per (method, MR) (artifact e)");
  std::string analyze_gt_path;
  analyze->add_option("--gt", analyze_gt_path,
                      "ground-truth JSON {method: {MR: 0|1}} to compare against");
  analyze->add_option("-o,--out-dir", out_dir, "run directory");

  // --- mine ---
  auto* mine_cmd = app.add_subcommand(
      "mine", "mine constraint rules for MIXED pairs into the analysis artifact");
  double mine_precision = 0.95;
  std::uint64_t mine_support = 5;
  std::size_t mine_max_rules = 5;
  mine_cmd->add_option("--min-precision", mine_precision, "rule precision bar (0, 1]");
  mine_cmd->add_option("--min-support", mine_support, "rule support bar");
  mine_cmd->add_option("--max-rules", mine_max_rules, "rules kept per (method, MR)");
  mine_cmd->add_option("-o,--out-dir", out_dir, "run directory");

  // --- pipeline ---
  auto* pipeline =
      app.add_subcommand("pipeline", "gen -> transform -> run -> check -> analyze -> mine");
  GenFlags pipe_flags;
  add_gen_flags(pipeline, pipe_flags);
  std::string pipe_preset;
  pipeline->add_option("--preset", pipe_preset,
                       "named configuration: rq1 (1..50 int, lengths 4..20) or rq2 "
                       "(-15..15 int, lengths 0..20); explicit flags override");
  MrParams pipe_params;
  pipeline->add_option("--add-constant", pipe_params.add_constant,
                       "constant added by MR_ADD (> 0)");
  pipeline->add_option("--mul-factor", pipe_params.mul_factor,
                       "factor applied by MR_MUL (> 1)");
  std::vector<std::string> pipe_methods;
  pipeline->add_option("--methods", pipe_methods, "built-in methods to run (default: all)")
      ->delimiter(',');
  unsigned pipe_jobs = 1;
  pipeline->add_option("-j,--jobs", pipe_jobs, "worker threads (result is identical)");
  std::string pipe_external_cmd, pipe_sut_name = "external";
  double pipe_timeout = 2.0;
  pipeline->add_option("--external", pipe_external_cmd,
                       "external SUT command (whitespace-split argv)");
  pipeline->add_option("--sut-name", pipe_sut_name, "method name recorded for --external");
  pipeline->add_option("--timeout", pipe_timeout, "per-call timeout for --external, seconds");
  double pipe_tolerance = kDefaultTolerance;
  pipeline->add_option("--tolerance", pipe_tolerance, "checker tolerance");
  double pipe_precision = 0.95;
  std::uint64_t pipe_support = 5;
  std::size_t pipe_max_rules = 5;
  pipeline->add_option("--min-precision", pipe_precision, "miner precision bar");
  pipeline->add_option("--min-support", pipe_support, "miner support bar");
  pipeline->add_option("--max-rules", pipe_max_rules, "rules kept per (method, MR)");
  std::string pipe_gt_path;
  pipeline->add_option("--gt", pipe_gt_path, "ground-truth JSON to compare against");
  pipeline->add_option("-o,--out-dir", out_dir, "run directory");

  // --- methods ---
  auto* methods_cmd = app.add_subcommand("methods", "list the built-in corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  }

  try {
    const ArtifactLayout layout{out_dir};
    if (gen->parsed()) {
      const FuzzConfig config = config_from_flags(gen, gen_flags);
      stage_gen(config, layout);
      std::cout << "wrote " << layout.td() << std::endl;
    } else if (transform->parsed()) {
      stage_transform(layout, transform_params);
      std::cout << "wrote " << layout.transformed() << std::endl;
    } else if (run->parsed()) {
      std::optional<ExternalSutSpec> external;
      if (run->count("--external") > 0) {
        require_filename_safe(run_sut_name);
        external = ExternalSutSpec{split_command(run_external_cmd), run_sut_name,
                                   canonical_round(run_timeout)};
      }
      const auto ran = stage_run(layout, run_methods, run_jobs, external);
      std::cout << "wrote " << layout.exec_dir() << "/ (" << ran.size() << " method"
                << (ran.size() == 1 ? "" : "s") << ")" << std::endl;
    } else if (check_cmd->parsed()) {
      stage_check(layout, check_tolerance);
      std::cout << "wrote " << layout.checked_dir() << "/" << std::endl;
    } else if (analyze->parsed()) {
      std::vector<GtExpectation> gt;
      if (!analyze_gt_path.empty()) gt = load_gt(analyze_gt_path);
      const AnalysisArtifact a = stage_analyze(layout, gt);
      std::cout << render_table(a.reports) << "wrote " << layout.analysis() << std::endl;
    } else if (mine_cmd->parsed()) {
      const AnalysisArtifact a =
          stage_mine(layout, mine_precision, mine_support, mine_max_rules);
      std::size_t n_rules = 0;
      for (const PairConstraints& pc : a.constraints) n_rules += pc.rules.size();
      std::cout << "mined " << n_rules << " rule" << (n_rules == 1 ? "" : "s") << " over "
                << a.constraints.size() << " mixed pair"
                << (a.constraints.size() == 1 ? "" : "s") << "; wrote "
                << layout.analysis() << std::endl;
    } else if (pipeline->parsed()) {
      PipelineOptions opts;
      opts.config = config_from_flags(pipeline, pipe_flags);
      if (pipeline->count("--preset") > 0) {
        FuzzConfig base = opts.config;
        apply_preset(base, pipe_preset);
        // Explicit flags win over the preset.
        if (pipeline->count("--low") == 0) opts.config.low = base.low;
        if (pipeline->count("--high") == 0) opts.config.high = base.high;
        if (pipeline->count("--input-type") == 0) opts.config.input_type = base.input_type;
        if (pipeline->count("--count") == 0 && pipeline->count("--duration") == 0)
          opts.config.budget = base.budget;
        if (pipeline->count("--min-len") == 0) opts.config.min_len = base.min_len;
        if (pipeline->count("--max-len") == 0) opts.config.max_len = base.max_len;
      }
      opts.params = pipe_params;
      opts.methods = pipe_methods;
      opts.jobs = pipe_jobs;
      if (pipeline->count("--external") > 0) {
        require_filename_safe(pipe_sut_name);
        opts.external = ExternalSutSpec{split_command(pipe_external_cmd), pipe_sut_name,
                                        canonical_round(pipe_timeout)};
      }
      opts.tolerance = pipe_tolerance;
      opts.min_precision = pipe_precision;
      opts.min_support = pipe_support;
      opts.max_rules_per_pair = pipe_max_rules;
      if (!pipe_gt_path.empty()) opts.gt = load_gt(pipe_gt_path);
      opts.out_dir = out_dir;
      const AnalysisArtifact a = run_pipeline(opts);
      std::cout << render_table(a.reports) << "wrote " << layout.analysis() << std::endl;
    } else if (methods_cmd->parsed()) {
      for (const MethodDescriptor& d : list_methods()) {
        std::cout << d.name << "  min_arity=" << d.min_arity << "  "
                  << (d.permutation_invariant ? "permutation-invariant" : "order-sensitive");
        if (!d.domain_note.empty()) std::cout << "  (" << d.domain_note << ")";
        std::cout << "\n";
      }
      std::cout << std::flush;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "artifact error: " << e.what() << std::endl;
    return 3;
  } catch (const LookupError& e) {
    std::cerr << "lookup error: " << e.what() << std::endl;
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
