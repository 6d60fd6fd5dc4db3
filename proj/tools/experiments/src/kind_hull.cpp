#include <algorithm>
#include <cmath>
#include <numbers>

#include "ghmc/experiments/instances.hpp"
#include "ghmc/random_targets.hpp"
#include "kinds.hpp"

namespace ghmc::experiments::detail {

namespace {

/// Random d = 1 mixture whose time keeps every C_j in (0, 1).
TargetMixture random_mixture(Engine& engine, long components, double time_fraction_lo,
                             double time_fraction_hi) {
  std::vector<double> w(static_cast<std::size_t>(components));
  double total = 0.0;
  for (double& x : w) total += (x = uniform(engine, 0.1, 1.0));
  const double var_g = log_uniform(engine, 0.5, 2.0);
  std::vector<MixtureComponent> comps;
  double min_scale = HUGE_VAL;
  for (double x : w) {
    const double var = log_uniform(engine, 0.25, 4.0);
    min_scale = std::min(min_scale, std::sqrt(var * var_g));
    comps.push_back({x / total, Vector::Constant(1, uniform(engine, -3.0, 3.0)),
                     SpdMatrix(Matrix::Constant(1, 1, var))});
  }
  // Normalize exactly enough for the 1e-12 sum check.
  double sum = 0.0;
  for (const auto& c : comps) sum += c.prob;
  comps.back().prob += 1.0 - sum;
  const double t = uniform(engine, time_fraction_lo, time_fraction_hi) * 0.5 * std::numbers::pi * min_scale;
  return TargetMixture(std::move(comps), GaussianParams::univariate(0.0, var_g), FixedTime{t});
}

}  // namespace

void run_hull_track(Context& ctx) {
  const Params& p = ctx.params;
  const long mixtures = p.integer("mixtures", 10, 1, 1000000);
  const long seeds = p.integer("seeds", 10, 1, 1000000);
  const long steps = p.integer("steps", 100, 1, 10000000);
  const long components = p.integer("components", 3, 1, 1000);
  const double frac_lo = p.positive("time_fraction_lo", 0.2);
  const double frac_hi = p.positive("time_fraction_hi", 0.95);
  const double slack = p.positive("slack", 1e-10);
  p.finish();
  if (!(frac_hi < 1.0 && frac_lo <= frac_hi)) {
    throw ConfigInvalid(p.path() + ".time_fraction_hi", "need time_fraction_lo <= time_fraction_hi < 1");
  }

  double worst_mu = -HUGE_VAL;
  double worst_sigma = -HUGE_VAL;
  double worst_traj = -HUGE_VAL;
  long trajectories = 0;
  for (long m = 0; m < mixtures; ++m) {
    const RngStream mix_rng = ctx.rng.split(static_cast<std::uint64_t>(m));
    auto engine = mix_rng.split(0).engine();
    const TargetMixture mix = random_mixture(engine, components, frac_lo, frac_hi);
    const ConvexHullSpec spec = ConvexHullSpec::from_mixture(mix);
    const double c_sup = mix.contraction_norm();
    ctx.record.point(m, "mixture_contraction_norm", c_sup);
    for (long s = 0; s < seeds; ++s) {
      const RngStream run_rng = mix_rng.split(static_cast<std::uint64_t>(s + 1));
      auto init_engine = run_rng.split(0).engine();
      const GaussianParams h0 =
          GaussianParams::univariate(uniform(init_engine, -10.0, 10.0), log_uniform(init_engine, 0.01, 100.0));
      const IterationTrace trace = iterate_random(mix, h0, static_cast<std::size_t>(steps), run_rng.split(1));
      const HullDistance d0 = hull_distance(spec, h0);
      HullDistance prev = d0;
      double c_pow2 = 1.0;
      for (std::size_t k = 0; k < trace.steps(); ++k) {
        const HullDistance cur = hull_distance(spec, trace.states[k + 1]);
        const double ck = std::abs(trace.contraction_mats[k](0, 0));
        worst_mu = std::max(worst_mu, cur.d_mu - ck * prev.d_mu);
        worst_sigma = std::max(worst_sigma, cur.d_sigma - ck * ck * prev.d_sigma);
        c_pow2 *= c_sup * c_sup;
        worst_traj = std::max(worst_traj, cur.d_sigma - c_pow2 * d0.d_sigma);
        if (m == 0 && s == 0) {
          ctx.record.point(static_cast<long>(k + 1), "example_d_mu", cur.d_mu);
          ctx.record.point(static_cast<long>(k + 1), "example_d_sigma", cur.d_sigma);
        }
        prev = cur;
      }
      ++trajectories;
    }
  }
  ctx.record.series_meanings = {
      {"mixture_contraction_norm", "sup_j |C_j| per mixture (indexed by mixture)"},
      {"example_d_mu", "distance of mu_k to the hull of means, first trajectory"},
      {"example_d_sigma", "distance of Sigma_k to the hull of covariances, first trajectory"},
  };
  ctx.record.scalar("trajectories", static_cast<double>(trajectories), "mixtures x seeds");
  ctx.record.check("d_mu_step_excess", worst_mu, slack, "max d_mu(k+1) - |C_k+1| d_mu(k)");
  ctx.record.check("d_sigma_step_excess", worst_sigma, slack, "max d_sigma(k+1) - |C_k+1|^2 d_sigma(k)");
  ctx.record.check("d_sigma_trajectory_excess", worst_traj, slack,
                   "max d_sigma(n) - |C|^2n d_sigma(0) with |C| = sup_j |C_j|");
}

}  // namespace ghmc::experiments::detail
