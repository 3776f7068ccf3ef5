#ifndef MRTRIM_RUNNER_HPP
#define MRTRIM_RUNNER_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mrtrim/canonical.hpp"
#include "mrtrim/mr_catalog.hpp"
#include "mrtrim/runner_types.hpp"
#include "mrtrim/sut_corpus.hpp"
#include "mrtrim/tdgen.hpp"

namespace mrtrim {

inline constexpr std::size_t mr_index(MrId id) { return static_cast<std::size_t>(id); }

/// One datum plus its six follow-up variants (absent where the transform was
/// skipped or the MR was not requested) — the "seven fields" shape.
struct TransformedEntry {
  TestDatum datum;
  std::array<std::optional<std::vector<double>>, kAllMrs.size()> variants;

  friend bool operator==(const TransformedEntry&, const TransformedEntry&) = default;
};

/// Transform-stage output: everything the execution stage needs.
struct TransformedBundle {
  FuzzConfig config;
  MrParams params;
  std::vector<TransformedEntry> entries;

  friend bool operator==(const TransformedBundle&, const TransformedBundle&) = default;
};

/// Applies every requested MR to every datum. Each (mr, datum) pair gets its
/// own RNG sub-stream derived from (seed, mr, datum id) — independent of the
/// method list, so one transformed bundle serves all methods identically.
inline TransformedBundle transform_all(const std::vector<MrSpec>& specs,
                                       const std::vector<TestDatum>& data,
                                       const FuzzConfig& config) {
  const ValueDomain domain = ValueDomain::of(config);
  TransformedBundle bundle;
  bundle.config = config;
  bundle.params = specs.empty() ? MrParams{} : specs.front().params;
  bundle.entries.reserve(data.size());
  for (const TestDatum& d : data) {
    TransformedEntry entry;
    entry.datum = d;
    for (const MrSpec& spec : specs) {
      RngStream rng = derive_stream(config.seed, transform_stream_label(spec.id, d.id));
      if (auto t = transform(spec, d, domain, rng))
        entry.variants[mr_index(spec.id)] = std::move(t->values);
    }
    bundle.entries.push_back(std::move(entry));
  }
  return bundle;
}

namespace runner_detail {

inline ExecutionOutcome canonicalize(const ExecutionOutcome& o) {
  return o.is_value() ? ExecutionOutcome::of(canonical_round(o.value())) : o;
}

/// Fills the records of one (method, MR) pair into its preassigned slot
/// range. Slots are disjoint across tasks, so workers never contend.
inline void fill_pair(const std::string& method, const MrSpec& spec,
                      const TransformedBundle& bundle, std::uint64_t first_exec_id,
                      std::vector<ExecutionRecord>& records) {
  for (std::size_t di = 0; di < bundle.entries.size(); ++di) {
    const TransformedEntry& entry = bundle.entries[di];
    ExecutionRecord& r = records[first_exec_id + di];
    r.exec_id = first_exec_id + di;
    r.method = method;
    r.mr = spec.id;
    r.source_input = entry.datum.values;
    r.source_outcome = canonicalize(evaluate(method, entry.datum.values));
    const auto& variant = entry.variants[mr_index(spec.id)];
    if (variant.has_value()) {
      r.followup_input = *variant;
      r.followup_outcome = canonicalize(evaluate(method, *variant));
    }
  }
}

}  // namespace runner_detail

/// Executes every (method, MR, datum) triple against the built-in corpus.
/// Records come back in (method, MR, datum) order with exec_ids 0..k-1; the
/// result is bit-identical for any `jobs` value because each (method, MR)
/// task owns a fixed slot range. Unknown method names throw LookupError
/// before any execution starts.
inline std::vector<ExecutionRecord> run_transformed(const std::vector<std::string>& methods,
                                                    const std::vector<MrSpec>& specs,
                                                    const TransformedBundle& bundle,
                                                    unsigned jobs = 1) {
  for (const std::string& m : methods) method_descriptor(m);  // resolve up front

  const std::size_t n_data = bundle.entries.size();
  std::vector<ExecutionRecord> records(methods.size() * specs.size() * n_data);

  struct Task {
    const std::string* method;
    const MrSpec* spec;
    std::uint64_t first_exec_id;
  };
  std::vector<Task> tasks;
  tasks.reserve(methods.size() * specs.size());
  std::uint64_t next_id = 0;
  for (const std::string& m : methods)
    for (const MrSpec& spec : specs) {
      tasks.push_back({&m, &spec, next_id});
      next_id += n_data;
    }

  if (jobs <= 1 || tasks.size() <= 1) {
    for (const Task& t : tasks)
      runner_detail::fill_pair(*t.method, *t.spec, bundle, t.first_exec_id, records);
    return records;
  }

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      runner_detail::fill_pair(*t.method, *t.spec, bundle, t.first_exec_id, records);
    }
  };
  std::vector<std::thread> pool;
  const auto n_threads = static_cast<unsigned>(std::min<std::size_t>(jobs, tasks.size()));
  pool.reserve(n_threads);
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  return records;
}

/// Transform + execute in one call.
inline std::vector<ExecutionRecord> run_mt(const std::vector<std::string>& methods,
                                           const std::vector<MrSpec>& specs,
                                           const std::vector<TestDatum>& data,
                                           const FuzzConfig& config, unsigned jobs = 1) {
  return run_transformed(methods, specs, transform_all(specs, data, config), jobs);
}

}  // namespace mrtrim

#endif  // MRTRIM_RUNNER_HPP
