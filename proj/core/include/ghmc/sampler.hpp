#pragma once

// Sample-based realization of GHMC: Gaussian draws, one sampled transition,
// and multi-step chains run alongside the analytic moment map.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ghmc/ghmc_operator.hpp"
#include "ghmc/rng.hpp"

namespace ghmc {

/// n x d matrix of draws plus provenance.
struct SampleBatch {
  Matrix draws;
  std::string source;
  std::uint64_t seed = 0;

  long size() const { return draws.rows(); }
  long dim() const { return draws.cols(); }
};

/// Rows handled by one RNG sub-stream; fixed so results do not depend on the
/// number of worker threads.
inline constexpr long kSampleChunkRows = 1 << 14;

/// i.i.d. N(mu, Sigma) draws through the spectral factor V diag(sqrt(lambda)).
SampleBatch sample_gaussian(const GaussianParams& params, long n, const RngStream& rng);

/// For each row q: p ~ N(mu_g, Sigma_g), output Q = mu_f + C q~ + A S p~.
SampleBatch ghmc_sample_step(const GhmcStep& step, const SampleBatch& q_batch,
                             const RngStream& rng);

/// Empirical mean / covariance with normal-theory standard errors:
/// se(mean_i) = s_i / sqrt(n), se(cov_ij) = sqrt((s_ii s_jj + s_ij^2) / (n - 1)),
/// which reduces to s^2 sqrt(2 / (n - 1)) on the diagonal.
struct BatchMoments {
  long n = 0;
  Vector mean;
  Matrix cov;
  Vector se_mean;
  Matrix se_cov;
};

BatchMoments batch_moments(const SampleBatch& batch);

/// Largest |empirical - analytic| / se over all mean and covariance entries.
double max_standard_score(const BatchMoments& empirical, const GaussianParams& analytic);

struct ChainRun {
  /// Analytic moments, one state per step plus the initial one.
  IterationTrace analytic;
  /// Empirical moments of the sampled chain, aligned with analytic.states.
  std::vector<BatchMoments> empirical;
  SampleBatch final_batch;
};

/// Samples n draws from `initial` and pushes them through `steps` in order,
/// advancing the analytic trace with ghmc_step at the same time. Only the
/// last batch is kept; earlier ones are reduced to their moments.
ChainRun run_chain(const GaussianParams& initial, const std::vector<GhmcStep>& steps, long n,
                   const RngStream& rng);

}  // namespace ghmc
