#pragma once

#include "ghmc/experiments/config.hpp"
#include "ghmc/experiments/record.hpp"

namespace ghmc::experiments {

struct RunOptions {
  /// 0 keeps the library default (hardware concurrency).
  unsigned threads = 0;
  bool dump_samples = false;
  bool timing = false;
};

/// Dispatches on config.kind. Deterministic given (config, seed) for any
/// thread count. Parameter errors surface as ConfigInvalid; downstream library
/// errors are rethrown as Error with the experiment name prefixed.
ResultRecord run(const ExperimentConfig& config, const RunOptions& options = {});

const char* library_version();

}  // namespace ghmc::experiments
