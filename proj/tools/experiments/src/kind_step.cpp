#include <algorithm>
#include <cfloat>
#include <cmath>

#include "ghmc/experiments/instances.hpp"
#include "ghmc/ghmc_operator.hpp"
#include "ghmc/sampler.hpp"
#include "kinds.hpp"

namespace ghmc::experiments::detail {

namespace {

struct Ranges {
  double eig_lo, eig_hi, t_lo, t_hi, mean_scale;
};

Ranges read_ranges(const Params& p) {
  Ranges r{p.positive("eig_lo", 0.25), p.positive("eig_hi", 4.0), p.positive("t_lo", 0.1),
           p.positive("t_hi", 3.0), p.positive("mean_scale", 2.0)};
  if (r.eig_lo > r.eig_hi) throw ConfigInvalid(p.path() + ".eig_lo", "must not exceed eig_hi");
  if (r.t_lo > r.t_hi) throw ConfigInvalid(p.path() + ".t_lo", "must not exceed t_hi");
  return r;
}

/// Random (f, g, t) with commuting covariances and non-degenerate angles.
GhmcStep random_step(Engine& engine, long d, const Ranges& r) {
  for (;;) {
    auto [sf, sg] = random_commuting_pair(engine, d, r.eig_lo, r.eig_hi);
    const double t = uniform(engine, r.t_lo, r.t_hi);
    GhmcStep step(random_gaussian(engine, sf, r.mean_scale), random_gaussian(engine, sg, r.mean_scale), t);
    if (!step.flow().degenerate_angle) return step;
  }
}

double componentwise_relative(const Matrix& got, const Matrix& want) {
  double worst = 0.0;
  for (long i = 0; i < want.size(); ++i) {
    const double denom = std::max(std::abs(want(i)), DBL_MIN);
    worst = std::max(worst, std::abs(got(i) - want(i)) / denom);
  }
  return worst;
}

void fixed_point(Context& ctx, const std::vector<long>& dims, long instances, double tol,
                 const Ranges& ranges) {
  double worst = 0.0;
  double worst_alt = 0.0;
  std::uint64_t stream = 0;
  for (long i = 0; i < instances; ++i) {
    const long d = dims[static_cast<std::size_t>(i) % dims.size()];
    auto engine = ctx.rng.split(stream++).engine();
    const GhmcStep step = random_step(engine, d, ranges);
    const GaussianParams& f = step.target();
    const GaussianParams out = ghmc_step(step, f);
    const double err = std::max(componentwise_relative(out.mean(), f.mean()),
                                componentwise_relative(out.cov().matrix(), f.cov().matrix()));
    const Matrix& c = step.flow().c;
    const Matrix& s = step.flow().s;
    const Matrix alt = c * f.cov().matrix() * c + s * f.cov().matrix() * s;
    worst = std::max(worst, err);
    worst_alt = std::max(worst_alt, (alt - f.cov().matrix()).norm() / f.cov().matrix().norm());
    ctx.record.point(static_cast<long>(stream - 1), "fixed_point_rel_error", err);
  }
  ctx.record.series_meanings["fixed_point_rel_error"] =
      "max componentwise relative error of ghmc_step(f) against f, per instance";
  ctx.record.scalar("instances", static_cast<double>(stream), "random (Sigma_f, Sigma_g, t) instances");
  ctx.record.scalar("alternate_form_rel_error", worst_alt,
                    "max relative Frobenius error of C Sigma_f C + S Sigma_f S against Sigma_f");
  ctx.record.check("fixed_point_rel_error", worst, tol,
                   "max componentwise relative error of ghmc_step(f) against f");
}

void quadrature(Context& ctx, long instances, long grid_points, double halfwidth, double tol,
                const Ranges& ranges, double quad_tol) {
  double worst = 0.0;
  for (long i = 0; i < instances; ++i) {
    auto engine = ctx.rng.split(static_cast<std::uint64_t>(i)).engine();
    const GhmcStep step = random_step(engine, 1, ranges);
    const GaussianParams h = GaussianParams::univariate(
        uniform(engine, -ranges.mean_scale, ranges.mean_scale), log_uniform(engine, ranges.eig_lo, ranges.eig_hi));
    const GaussianParams out = ghmc_step(step, h);
    const double mu = out.mean()(0);
    const double var = out.cov()(0, 0);
    const double sd = std::sqrt(var);
    std::vector<double> grid(static_cast<std::size_t>(grid_points));
    for (long k = 0; k < grid_points; ++k) {
      grid[static_cast<std::size_t>(k)] =
          mu - halfwidth * sd + 2.0 * halfwidth * sd * static_cast<double>(k) / static_cast<double>(grid_points - 1);
    }
    QuadratureOracleOptions opts;
    opts.abs_tol = quad_tol;
    const auto numeric = quadrature_oracle_1d(step, h, grid, opts);
    double err = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      err = std::max(err, std::abs(numeric[k] - normal_pdf(grid[k], mu, var)));
    }
    worst = std::max(worst, err);
    ctx.record.point(i, "sup_density_error", err);
  }
  ctx.record.series_meanings["sup_density_error"] =
      "sup over the grid of |quadrature density - analytic N(mu_hat, Sigma_hat) density|, per instance";
  ctx.record.scalar("instances", static_cast<double>(instances), "random (f, g, h, t) instances, d = 1");
  ctx.record.scalar("grid_points", static_cast<double>(grid_points), "grid on mu_hat +- halfwidth sigma_hat");
  ctx.record.check("sup_density_error", worst, tol,
                   "sup |quadrature - analytic| density over all grids and instances");
}

void monte_carlo(Context& ctx, const std::vector<long>& dims, long instances, long n, double z_max,
                 const Ranges& ranges) {
  double worst = 0.0;
  std::uint64_t stream = 0;
  Json dumped = Json::array();
  for (long i = 0; i < instances; ++i) {
    const long d = dims[static_cast<std::size_t>(i) % dims.size()];
    const RngStream sub = ctx.rng.split(stream++);
    auto engine = sub.split(0).engine();
    const GhmcStep step = random_step(engine, d, ranges);
    const GaussianParams h = random_gaussian(engine, random_spd(engine, d, ranges.eig_lo, ranges.eig_hi),
                                             ranges.mean_scale);
    const SampleBatch q = sample_gaussian(h, n, sub.split(1));
    const SampleBatch out = ghmc_sample_step(step, q, sub.split(2));
    const double z = max_standard_score(batch_moments(out), ghmc_step(step, h));
    worst = std::max(worst, z);
    ctx.record.point(static_cast<long>(stream - 1), "max_standard_score", z);
    if (ctx.options.dump_samples) dumped.push_back(samples_to_json(out.draws));
  }
  if (ctx.options.dump_samples) ctx.record.samples = std::move(dumped);
  ctx.record.series_meanings["max_standard_score"] =
      "max over mean and covariance entries of |empirical - analytic| / standard error, per instance";
  ctx.record.scalar("samples_per_instance", static_cast<double>(n), "draws pushed through one GHMC step");
  ctx.record.check("max_standard_score", worst, z_max,
                   "max standard score of empirical moments against the analytic moment map");
}

}  // namespace

void run_step_check(Context& ctx) {
  const Params& p = ctx.params;
  const std::string check = p.string("check", "fixed-point");
  const Ranges ranges = read_ranges(p);
  if (check == "fixed-point") {
    const auto dims = p.integers("dims", {1, 2, 3, 5}, 1, 64);
    const long instances = p.integer("instances", 400, 1, 1000000);
    const double tol = p.positive("tolerance", 1e-14);
    p.finish();
    fixed_point(ctx, dims, instances, tol, ranges);
  } else if (check == "quadrature") {
    const long instances = p.integer("instances", 20, 1, 1000000);
    const long grid = p.integer("grid_points", 401, 2, 1000000);
    const double halfwidth = p.positive("grid_halfwidth", 4.0);
    const double tol = p.positive("tolerance", 1e-8);
    const double quad_tol = p.positive("quadrature_tolerance", 1e-12);
    p.finish();
    quadrature(ctx, instances, grid, halfwidth, tol, ranges, quad_tol);
  } else if (check == "monte-carlo") {
    const auto dims = p.integers("dims", {1, 2, 3}, 1, 64);
    const long instances = p.integer("instances", 10, 1, 1000000);
    const long n = p.integer("samples", 1000000, 2, 1L << 40);
    const double z = p.positive("max_standard_score", 5.0);
    p.finish();
    monte_carlo(ctx, dims, instances, n, z, ranges);
  } else {
    throw ConfigInvalid(p.path() + ".check", "expected fixed-point, quadrature or monte-carlo");
  }
}

}  // namespace ghmc::experiments::detail
