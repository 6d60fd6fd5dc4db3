#include "ghmc/experiments/run.hpp"

#include <chrono>

#include "kinds.hpp"

#ifndef GHMC_VERSION_STRING
#define GHMC_VERSION_STRING "unknown"
#endif

namespace ghmc::experiments {

const char* library_version() { return GHMC_VERSION_STRING; }

namespace detail {

Json samples_to_json(const Matrix& draws) {
  Json rows = Json::array();
  for (long r = 0; r < draws.rows(); ++r) {
    Json row = Json::array();
    for (long c = 0; c < draws.cols(); ++c) row.push_back(draws(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

ResultRecord run(const ExperimentConfig& config, const RunOptions& options) {
  if (options.threads > 0) set_worker_threads(options.threads);

  ResultRecord record;
  record.name = config.name;
  record.kind = std::string(to_string(config.kind));
  record.config = config.to_json();
  record.seed = config.seed;
  record.library_version = library_version();
  record.rng_algorithm = std::string(RngStream::algorithm());

  const Params params(config.parameters, "$.parameters");
  detail::Context ctx{config, params, options, record, RngStream(config.seed)};
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (config.kind) {
      case Kind::kFlowCheck: detail::run_flow_check(ctx); break;
      case Kind::kStepCheck: detail::run_step_check(ctx); break;
      case Kind::kLemmaCheck: detail::run_lemma_check(ctx); break;
      case Kind::kChain: detail::run_chain(ctx); break;
      case Kind::kRandomChain: detail::run_random_chain(ctx); break;
      case Kind::kLimitLaw: detail::run_limit_law(ctx); break;
      case Kind::kHullTrack: detail::run_hull_track(ctx); break;
      case Kind::kLyapunov: detail::run_lyapunov(ctx); break;
      case Kind::kMetrics: detail::run_metrics(ctx); break;
    }
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const Error& e) {
    throw Error(config.name + " (" + record.kind + "): " + e.what());
  }
  if (options.timing) {
    record.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return record;
}

}  // namespace ghmc::experiments
