#include "ghmc/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "ghmc/errors.hpp"

namespace ghmc {

namespace {

std::size_t chunk_count(long n) {
  return static_cast<std::size_t>((n + kSampleChunkRows - 1) / kSampleChunkRows);
}

Matrix spectral_factor(const SpdMatrix& cov) {
  return cov.eigenvectors() * cov.eigenvalues().cwiseSqrt().asDiagonal();
}

/// rows [begin, begin + rows) of out <- mean + z L^T, z standard normal.
void fill_gaussian(Matrix& out, long begin, long rows, const Vector& mean, const Matrix& factor,
                   RngStream::Engine& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const long d = mean.size();
  Matrix z(rows, d);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < d; ++j) z(i, j) = normal(engine);
  }
  out.middleRows(begin, rows) = (z * factor.transpose()).rowwise() + mean.transpose();
}

void check_finite(const SampleBatch& batch, const char* what) {
  if (!batch.draws.allFinite()) throw Error(std::string(what) + ": non-finite draws");
}

}  // namespace

SampleBatch sample_gaussian(const GaussianParams& params, long n, const RngStream& rng) {
  if (n < 1) throw Error("sample_gaussian: n must be >= 1");
  SampleBatch batch{Matrix(n, params.dim()), "gaussian", rng.seed()};
  const Matrix factor = spectral_factor(params.cov());
  parallel_chunks(chunk_count(n), [&](std::size_t chunk) {
    const long begin = static_cast<long>(chunk) * kSampleChunkRows;
    const long rows = std::min(kSampleChunkRows, n - begin);
    auto engine = rng.split(chunk).engine();
    fill_gaussian(batch.draws, begin, rows, params.mean(), factor, engine);
  });
  check_finite(batch, "sample_gaussian");
  return batch;
}

SampleBatch ghmc_sample_step(const GhmcStep& step, const SampleBatch& q_batch,
                             const RngStream& rng) {
  require_same_dim(q_batch.dim(), step.dim(), "ghmc_sample_step");
  const long n = q_batch.size();
  if (n < 1) throw Error("ghmc_sample_step: empty batch");
  const auto& fm = step.flow();
  const Vector& mu_f = step.target().mean();
  // Q = mu_f + C q~ + A S p~ with p~ = L_g z.
  const Matrix momentum_map = fm.a * fm.s * spectral_factor(step.auxiliary().cov());
  const Matrix ct = fm.c.transpose();
  const Matrix mt = momentum_map.transpose();

  SampleBatch out{Matrix(n, step.dim()), "ghmc_step", rng.seed()};
  parallel_chunks(chunk_count(n), [&](std::size_t chunk) {
    const long begin = static_cast<long>(chunk) * kSampleChunkRows;
    const long rows = std::min(kSampleChunkRows, n - begin);
    auto engine = rng.split(chunk).engine();
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(rows, step.dim());
    for (long i = 0; i < rows; ++i) {
      for (long j = 0; j < step.dim(); ++j) z(i, j) = normal(engine);
    }
    const Matrix q_tilde = q_batch.draws.middleRows(begin, rows).rowwise() - mu_f.transpose();
    out.draws.middleRows(begin, rows) = ((q_tilde * ct + z * mt).rowwise() + mu_f.transpose());
  });
  check_finite(out, "ghmc_sample_step");
  return out;
}

BatchMoments batch_moments(const SampleBatch& batch) {
  const long n = batch.size();
  if (n < 2) throw Error("batch_moments: need at least two draws");
  BatchMoments m;
  m.n = n;
  m.mean = batch.draws.colwise().mean().transpose();
  const Matrix centered = batch.draws.rowwise() - m.mean.transpose();
  m.cov = centered.transpose() * centered / static_cast<double>(n - 1);
  const long d = batch.dim();
  m.se_mean = (m.cov.diagonal() / static_cast<double>(n)).cwiseSqrt();
  m.se_cov.resize(d, d);
  for (long i = 0; i < d; ++i) {
    for (long j = 0; j < d; ++j) {
      m.se_cov(i, j) =
          std::sqrt((m.cov(i, i) * m.cov(j, j) + m.cov(i, j) * m.cov(i, j)) / static_cast<double>(n - 1));
    }
  }
  return m;
}

double max_standard_score(const BatchMoments& empirical, const GaussianParams& analytic) {
  require_same_dim(empirical.mean.size(), analytic.dim(), "max_standard_score");
  double worst = 0.0;
  const long d = analytic.dim();
  for (long i = 0; i < d; ++i) {
    worst = std::max(worst, std::abs(empirical.mean(i) - analytic.mean()(i)) / empirical.se_mean(i));
    for (long j = 0; j < d; ++j) {
      worst = std::max(worst, std::abs(empirical.cov(i, j) - analytic.cov()(i, j)) /
                                  empirical.se_cov(i, j));
    }
  }
  return worst;
}

ChainRun run_chain(const GaussianParams& initial, const std::vector<GhmcStep>& steps, long n,
                   const RngStream& rng) {
  if (steps.empty()) throw Error("run_chain: no steps");
  ChainRun run;
  run.analytic.states.push_back(initial);
  SampleBatch batch = sample_gaussian(initial, n, rng.split(0));
  run.empirical.push_back(batch_moments(batch));
  for (std::size_t k = 0; k < steps.size(); ++k) {
    batch = ghmc_sample_step(steps[k], batch, rng.split(k + 1));
    run.empirical.push_back(batch_moments(batch));
    run.analytic.states.push_back(ghmc_step(steps[k], run.analytic.states.back()));
    run.analytic.chosen.push_back(k);
    run.analytic.contraction_mats.push_back(steps[k].flow().c);
  }
  run.final_batch = std::move(batch);
  return run;
}

}  // namespace ghmc
