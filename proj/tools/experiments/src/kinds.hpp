#pragma once

#include "ghmc/experiments/config.hpp"
#include "ghmc/experiments/record.hpp"
#include "ghmc/experiments/run.hpp"

namespace ghmc::experiments::detail {

struct Context {
  const ExperimentConfig& config;
  const Params& params;
  const RunOptions& options;
  ResultRecord& record;
  RngStream rng;
};

void run_flow_check(Context& ctx);
void run_step_check(Context& ctx);
void run_lemma_check(Context& ctx);
void run_chain(Context& ctx);
void run_random_chain(Context& ctx);
void run_limit_law(Context& ctx);
void run_hull_track(Context& ctx);
void run_lyapunov(Context& ctx);
void run_metrics(Context& ctx);

/// First column of a batch as JSON, for --dump-samples.
Json samples_to_json(const Matrix& draws);

}  // namespace ghmc::experiments::detail
