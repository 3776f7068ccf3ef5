#ifndef MRTRIM_RUNNER_TYPES_HPP
#define MRTRIM_RUNNER_TYPES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrtrim/mr_catalog.hpp"
#include "mrtrim/sut_corpus.hpp"

namespace mrtrim {

/// One (method, MR, datum) trial: both inputs and both outcomes.
/// The follow-up fields are absent together when the transform was skipped
/// (e.g. MR_EXC on an empty list).
struct ExecutionRecord {
  std::uint64_t exec_id = 0;
  std::string method;
  MrId mr = MrId::kAdd;
  std::vector<double> source_input;
  std::optional<std::vector<double>> followup_input;
  ExecutionOutcome source_outcome;
  std::optional<ExecutionOutcome> followup_outcome;

  friend bool operator==(const ExecutionRecord&, const ExecutionRecord&) = default;
};

}  // namespace mrtrim

#endif  // MRTRIM_RUNNER_TYPES_HPP
