#ifndef MRTRIM_MRTRIM_HPP
#define MRTRIM_MRTRIM_HPP

// Umbrella header: the whole library.

#include "mrtrim/analyzer.hpp"
#include "mrtrim/canonical.hpp"
#include "mrtrim/checker.hpp"
#include "mrtrim/errors.hpp"
#include "mrtrim/external_runner.hpp"
#include "mrtrim/miner.hpp"
#include "mrtrim/mr_catalog.hpp"
#include "mrtrim/pipeline.hpp"
#include "mrtrim/report_io.hpp"
#include "mrtrim/rng.hpp"
#include "mrtrim/runner.hpp"
#include "mrtrim/runner_types.hpp"
#include "mrtrim/sut_corpus.hpp"
#include "mrtrim/tdgen.hpp"
#include "mrtrim/version.hpp"

#endif  // MRTRIM_MRTRIM_HPP
