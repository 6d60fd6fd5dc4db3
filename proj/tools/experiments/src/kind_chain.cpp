#include <algorithm>
#include <cmath>

#include "ghmc/experiments/instances.hpp"
#include "ghmc/ghmc_operator.hpp"
#include "ghmc/univariate.hpp"
#include "kinds.hpp"

namespace ghmc::experiments::detail {

void run_chain(Context& ctx) {
  const Params& p = ctx.params;
  const auto dims = p.integers("dims", {3, 1}, 1, 64);
  const long steps = p.integer("steps", 50, 1, 10000000);
  const double contraction = p.positive("min_contraction", 0.97);
  const double eig_lo = p.positive("eig_lo", 0.5);
  const double eig_hi = p.positive("eig_hi", 2.0);
  const double mean_tol = p.positive("mean_tolerance", 1e-10);
  const double ratio_tol = p.positive("ratio_tolerance", 1e-12);
  p.finish();
  if (!(contraction < 1.0)) throw ConfigInvalid(p.path() + ".min_contraction", "must lie in (0, 1)");

  double worst_mean = 0.0;
  double worst_ratio = 0.0;
  bool any_scalar = false;
  for (std::size_t run = 0; run < dims.size(); ++run) {
    const long d = dims[run];
    auto engine = ctx.rng.split(run).engine();
    auto [sf, sg] = random_commuting_pair(engine, d, eig_lo, eig_hi);
    // Largest angle t / (sigma_f sigma_g) equals arccos(min_contraction).
    double min_scale = HUGE_VAL;
    const Matrix basis = sf.eigenvectors();
    const Vector lf = (basis.transpose() * sf.matrix() * basis).diagonal();
    const Vector lg = (basis.transpose() * sg.matrix() * basis).diagonal();
    for (long i = 0; i < d; ++i) min_scale = std::min(min_scale, std::sqrt(lf(i) * lg(i)));
    const double t = std::acos(contraction) * min_scale;
    const GhmcStep step(random_gaussian(engine, sf, 2.0), random_gaussian(engine, sg, 2.0), t);
    const GaussianParams h0 = random_gaussian(engine, random_spd(engine, d, eig_lo, eig_hi), 3.0);
    const IterationTrace trace = iterate_fixed(step, h0, static_cast<std::size_t>(steps));

    const Vector& mu_f = step.target().mean();
    const Matrix& c = step.flow().c;
    Matrix c_power = Matrix::Identity(d, d);
    const std::string prefix = "d" + std::to_string(d) + "_run" + std::to_string(run) + "_";
    for (long k = 0; k <= steps; ++k) {
      const Vector predicted = c_power * (h0.mean() - mu_f);
      const double err = ((trace.states[static_cast<std::size_t>(k)].mean() - mu_f) - predicted).norm();
      worst_mean = std::max(worst_mean, err);
      ctx.record.point(k, prefix + "mean_error", err);
      c_power = c * c_power;
    }
    ctx.record.series_meanings[prefix + "mean_error"] = "|(mu_k - mu_f) - C^k (mu_0 - mu_f)|, per step";

    if (d == 1) {
      any_scalar = true;
      const double cc = c(0, 0);
      const HalfPlanePoint target{mu_f(0), step.target().cov()(0, 0)};
      double prev = 0.0;
      for (long k = 0; k <= steps; ++k) {
        const auto& s = trace.states[static_cast<std::size_t>(k)];
        const double dr = d_r({s.mean()(0), s.cov()(0, 0)}, target);
        ctx.record.point(k, prefix + "d_r", dr);
        if (k > 0) {
          const double ratio = dr / prev;
          worst_ratio = std::max(worst_ratio, std::abs(ratio - cc));
          ctx.record.point(k, prefix + "d_r_ratio", ratio);
        }
        prev = dr;
      }
      ctx.record.series_meanings[prefix + "d_r"] = "d_R(P_k, F) in the (mu, Sigma) half-plane";
      ctx.record.series_meanings[prefix + "d_r_ratio"] = "d_R(P_k, F) / d_R(P_{k-1}, F)";
      ctx.record.scalar(prefix + "contraction", cc, "C of the scalar chain");
    }
    ctx.record.scalar(prefix + "contraction_norm", step.contraction_norm(), "|C| (spectral norm)");
  }
  ctx.record.check("mean_error", worst_mean, mean_tol,
                   "max |(mu_k - mu_f) - C^k (mu_0 - mu_f)| over all steps and runs");
  if (any_scalar) {
    ctx.record.check("d_r_ratio_error", worst_ratio, ratio_tol,
                     "max |d_R(P_{k+1}, F) / d_R(P_k, F) - C| over d = 1 runs");
  }
}

}  // namespace ghmc::experiments::detail
