#pragma once

// The acceptance suite: one pinned experiment config per criterion.

#include <optional>
#include <string>
#include <vector>

#include "ghmc/experiments/config.hpp"
#include "ghmc/experiments/record.hpp"
#include "ghmc/experiments/run.hpp"

namespace ghmc::experiments {

struct Criterion {
  int id = 0;
  std::string title;
  ExperimentConfig config;
  /// Wall-clock budget in seconds; nullopt when the criterion states none.
  std::optional<double> runtime_limit;

  /// "NN-<slug>.json"
  std::string file_name() const;
};

const std::vector<Criterion>& acceptance_criteria();

struct CriterionOutcome {
  const Criterion* criterion = nullptr;
  ResultRecord record;
  double seconds = 0.0;
  bool within_budget = true;
  std::string error;

  bool passed() const { return error.empty() && within_budget && record.passed(); }
  /// "PASS [NN] title (x.xx s)" plus failing assertions.
  std::string summary() const;
};

CriterionOutcome run_criterion(const Criterion& criterion, const RunOptions& options = {});

}  // namespace ghmc::experiments
