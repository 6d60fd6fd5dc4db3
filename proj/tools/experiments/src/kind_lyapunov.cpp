#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "ghmc/random_targets.hpp"
#include "ghmc/sampler.hpp"
#include "ghmc/univariate.hpp"
#include "kinds.hpp"

namespace ghmc::experiments::detail {

namespace {

/// max_i sum_j p_j log c_ji over the common eigenbasis of the C_j.
double eigenvalue_average_oracle(const TargetMixture& mix) {
  const long d = mix.dim();
  Matrix combo = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < mix.size(); ++j) {
    combo += (1.0 + 0.37 * static_cast<double>(j)) * mix.step(j).flow().c;
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (combo + combo.transpose()));
  const Matrix& v = es.eigenvectors();
  Vector acc = Vector::Zero(d);
  for (std::size_t j = 0; j < mix.size(); ++j) {
    const Vector diag = (v.transpose() * mix.step(j).flow().c * v).diagonal();
    acc += mix.components()[j].prob * diag.array().abs().log().matrix();
  }
  return acc.maxCoeff();
}

/// First coordinate of X_k for n independent random-target chains.
std::vector<double> chain_first_coordinate(const TargetMixture& mix, const GaussianParams& initial,
                                           std::size_t k, long n, const RngStream& rng) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const auto chunk = static_cast<std::size_t>(kSampleChunkRows);
  const auto total = static_cast<std::size_t>(n);
  parallel_chunks((total + chunk - 1) / chunk, [&](std::size_t c) {
    auto engine = rng.split(c).engine();
    std::normal_distribution<double> normal(0.0, 1.0);
    const long d = mix.dim();
    for (std::size_t r = c * chunk; r < std::min(total, (c + 1) * chunk); ++r) {
      Vector mu = initial.mean();
      Matrix sigma = initial.cov().matrix();
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = mix.draw(engine);
        const Matrix& cm = mix.step(j).flow().c;
        const Vector& mu_f = mix.components()[j].mean;
        const Matrix& sigma_f = mix.components()[j].cov.matrix();
        mu = mu_f + cm * (mu - mu_f);
        sigma = sigma_f + cm * (sigma - sigma_f) * cm;
      }
      Vector z(d);
      for (long i = 0; i < d; ++i) z(i) = normal(engine);
      const Matrix l = Eigen::LLT<Matrix>(0.5 * (sigma + sigma.transpose())).matrixL();
      out[r] = (mu + l * z)(0);
    }
  });
  return out;
}

std::vector<double> to_vector(const SampleBatch& b) {
  return std::vector<double>(b.draws.data(), b.draws.data() + b.draws.rows());
}

}  // namespace

void run_lyapunov(Context& ctx) {
  const Params& p = ctx.params;
  const long n = p.integer("factors", 10000, 1, 1L << 40);
  const long ks_steps = p.integer("stationarity_steps", 60, 1, 1000000);
  const long ks_replicas = p.integer("stationarity_replicas", 100000, 2, 1L << 40);
  const double ks_tol = p.positive("ks_tolerance", 0.02);

  const Params sp = p.object("scalar");
  const UnivariateMixture scalar = parse_univariate_mixture(sp.object("mixture"));
  const double scalar_tol = sp.positive("tolerance", 1e-12);
  const double scalar_mu0 = sp.number("initial_mean", 5.0);
  const double scalar_var0 = sp.positive("initial_variance", 0.25);
  sp.finish();

  const Params cp = p.object("commuting");
  const TargetMixture commuting = parse_target_mixture(cp.object("mixture"));
  const double commuting_tol = cp.positive("tolerance", 0.01);
  const GaussianParams commuting_h0(parse_vector(cp.raw("initial_mean"), cp.path() + ".initial_mean"),
                                    parse_spd(cp.raw("initial_cov"), cp.path() + ".initial_cov"));
  cp.finish();
  p.finish();

  // Scalar FixedAlpha mixture: every multiplier is alpha.
  const TargetMixture scalar_mix = scalar.to_target_mixture();
  const LyapunovEstimate se = lyapunov_estimate(scalar_mix, static_cast<std::size_t>(n), ctx.rng.split(0),
                                                LyapunovSpace::kMean);
  ctx.record.scalar("scalar_exponent", se.exponent, "n^-1 log |prod A_j|, scalar mixture");
  ctx.record.scalar("scalar_log_alpha", std::log(scalar.alpha()), "log alpha");
  ctx.record.check("scalar_exponent_error", std::abs(se.exponent - std::log(scalar.alpha())), scalar_tol,
                   "|estimate - log alpha|");

  const LyapunovEstimate ce = lyapunov_estimate(commuting, static_cast<std::size_t>(n), ctx.rng.split(1),
                                                LyapunovSpace::kMean);
  const double oracle = eigenvalue_average_oracle(commuting);
  ctx.record.scalar("commuting_exponent", ce.exponent, "n^-1 log |prod C_j|, commuting d = 2 mixture");
  ctx.record.scalar("commuting_oracle", oracle, "max_i E[log c_i] over the common eigenbasis");
  ctx.record.scalar("commuting_mean_log_norm", ce.mean_log_norm, "E[log |C|]");
  ctx.record.scalar("commuting_log_plus_moment", ce.log_plus_moment, "E[log+ |C|]");
  ctx.record.check("commuting_exponent_error", std::abs(ce.exponent - oracle), commuting_tol,
                   "|estimate - eigenvalue-average oracle|");

  // Stationarity: X_k against X_2k from independent chains.
  const auto k = static_cast<std::size_t>(ks_steps);
  const double ks_scalar = ks_distance(
      to_vector(sample_chain_output(scalar, scalar_mu0, scalar_var0, k, ks_replicas, ctx.rng.split(2))),
      to_vector(sample_chain_output(scalar, scalar_mu0, scalar_var0, 2 * k, ks_replicas, ctx.rng.split(3))));
  const double ks_commuting =
      ks_distance(chain_first_coordinate(commuting, commuting_h0, k, ks_replicas, ctx.rng.split(4)),
                  chain_first_coordinate(commuting, commuting_h0, 2 * k, ks_replicas, ctx.rng.split(5)));
  ctx.record.scalar("ks_scalar", ks_scalar, "two-sample KS between X_k and X_2k, scalar mixture");
  ctx.record.scalar("ks_commuting", ks_commuting,
                    "two-sample KS between first coordinates of X_k and X_2k, commuting mixture");
  ctx.record.check("scalar_exponent_sign", se.exponent, 0.0, "scalar estimate is not positive");
  ctx.record.check("commuting_exponent_sign", ce.exponent, 0.0, "commuting estimate is not positive");
  ctx.record.check("ks_scalar", ks_scalar, ks_tol, "KS(X_k, X_2k), scalar mixture");
  ctx.record.check("ks_commuting", ks_commuting, ks_tol, "KS(X_k, X_2k), commuting mixture");
}

}  // namespace ghmc::experiments::detail
