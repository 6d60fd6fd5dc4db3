#include <algorithm>
#include <cmath>

#include "ghmc/random_targets.hpp"
#include "ghmc/univariate.hpp"
#include "kinds.hpp"

namespace ghmc::experiments::detail {

namespace {

struct MeanSe {
  double mean;
  double se;
};

MeanSe mean_se(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double m = 0.0;
  for (double v : x) m += v;
  m /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

void run_random_chain(Context& ctx) {
  const Params& p = ctx.params;
  const UnivariateMixture mix = parse_univariate_mixture(p.object("mixture"));
  const double mu0 = p.number("initial_mean", 5.0);
  const double var0 = p.positive("initial_variance", 0.25);
  const double aux_mean = p.number("auxiliary_mean", 0.0);
  const double aux_var = p.positive("auxiliary_variance", 1.0);
  const long replicas = p.integer("replicas", 10000, 2, 100000000);
  const auto steps = p.integers("steps", {1, 5, 20}, 1, 1000000);
  const double z_max = p.positive("max_standard_score", 5.0);
  const double se_floor = p.positive("standard_error_floor", 1e-12);
  p.finish();

  const TargetMixture target = mix.to_target_mixture(aux_mean, aux_var);
  const GaussianParams initial = GaussianParams::univariate(mu0, var0);
  const std::size_t k_max = static_cast<std::size_t>(*std::max_element(steps.begin(), steps.end()));

  std::vector<std::vector<double>> mus(steps.size(), std::vector<double>(static_cast<std::size_t>(replicas)));
  auto vars = mus;
  const auto chunk = static_cast<std::size_t>(kSampleChunkRows);
  const auto n = static_cast<std::size_t>(replicas);
  parallel_chunks((n + chunk - 1) / chunk, [&](std::size_t c) {
    for (std::size_t r = c * chunk; r < std::min(n, (c + 1) * chunk); ++r) {
      const IterationTrace trace = iterate_random(target, initial, k_max, ctx.rng.split(r));
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = trace.states[static_cast<std::size_t>(steps[i])];
        mus[i][r] = s.mean()(0);
        vars[i][r] = s.cov()(0, 0);
      }
    }
  });

  double worst = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const long k = steps[i];
    const TransientMoments expected = transient_moments(mix, mu0, var0, static_cast<std::size_t>(k));
    const MeanSe m = mean_se(mus[i]);
    const MeanSe v = mean_se(vars[i]);
    const double zm = std::abs(m.mean - expected.mean) / std::max(m.se, se_floor);
    const double zv = std::abs(v.mean - expected.variance) / std::max(v.se, se_floor);
    worst = std::max({worst, zm, zv});
    ctx.record.point(k, "mc_mean_mu", m.mean);
    ctx.record.point(k, "expected_mean_mu", expected.mean);
    ctx.record.point(k, "se_mean_mu", m.se);
    ctx.record.point(k, "mc_mean_sigma2", v.mean);
    ctx.record.point(k, "expected_mean_sigma2", expected.variance);
    ctx.record.point(k, "se_mean_sigma2", v.se);
  }
  ctx.record.series_meanings = {
      {"mc_mean_mu", "replica average of mu_k"},
      {"expected_mean_mu", "alpha^k mu_0 + (1 - alpha^k) E[M]"},
      {"se_mean_mu", "standard error of the replica average of mu_k"},
      {"mc_mean_sigma2", "replica average of sigma_k^2"},
      {"expected_mean_sigma2", "alpha^2k sigma_0^2 + (1 - alpha^2k) E[S^2]"},
      {"se_mean_sigma2", "standard error of the replica average of sigma_k^2"},
  };
  ctx.record.scalar("replicas", static_cast<double>(replicas), "independent random-target chains");
  ctx.record.scalar("alpha", mix.alpha(), "per-step contraction of every component");
  ctx.record.check("max_standard_score", worst, z_max,
                   "max |MC average - closed form| / se over steps, for mu_k and sigma_k^2");
}

}  // namespace ghmc::experiments::detail
