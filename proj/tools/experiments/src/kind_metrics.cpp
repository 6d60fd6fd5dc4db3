#include <algorithm>
#include <cmath>

#include "ghmc/experiments/instances.hpp"
#include "ghmc/univariate.hpp"
#include "kinds.hpp"

namespace ghmc::experiments::detail {

namespace {

HalfPlanePoint random_point(Engine& engine, double mean_range, double var_hi) {
  return {uniform(engine, -mean_range, mean_range), log_uniform(engine, 1e-3, var_hi)};
}

}  // namespace

void run_metrics(Context& ctx) {
  const Params& p = ctx.params;
  const long triples = p.integer("triples", 100000, 1, 1L << 40);
  const double mean_range = p.positive("mean_range", 5.0);
  const double var_hi = p.positive("variance_max", 5.0);
  const double slack = p.positive("slack", 1e-12);
  const double geodesic_tol = p.positive("geodesic_tolerance", 1e-12);
  p.finish();

  auto engine = ctx.rng.split(0).engine();
  double worst_h = -HUGE_VAL;
  double worst_r = -HUGE_VAL;
  double worst_nh_axis = 0.0;
  double worst_geodesic = 0.0;
  double worst_symmetry = 0.0;
  for (long i = 0; i < triples; ++i) {
    const HalfPlanePoint a = random_point(engine, mean_range, var_hi);
    const HalfPlanePoint b = random_point(engine, mean_range, var_hi);
    const HalfPlanePoint c = random_point(engine, mean_range, var_hi);
    worst_h = std::max(worst_h, d_h(a, c) - d_h(a, b) - d_h(b, c));
    worst_r = std::max(worst_r, d_r(a, c) - d_r(a, b) - d_r(b, c));
    worst_symmetry = std::max({worst_symmetry, std::abs(d_h(a, b) - d_h(b, a)), std::abs(d_r(a, b) - d_r(b, a))});

    const double m = uniform(engine, -mean_range, mean_range);
    const double s = uniform(engine, -var_hi, var_hi);
    worst_nh_axis = std::max({worst_nh_axis, std::abs(n_h(m, 0.0) - std::abs(m)),
                              std::abs(n_h(0.0, s) - std::abs(s))});

    const double cc = uniform(engine, 1e-3, 1.0 - 1e-3);
    const HalfPlanePoint g = geodesic(a, b, cc, 1.0);
    const HalfPlanePoint step = half_plane_step(a, b, cc);
    worst_geodesic = std::max({worst_geodesic, std::abs(g.mu - step.mu), std::abs(g.sigma - step.sigma)});
  }
  ctx.record.scalar("triples", static_cast<double>(triples), "random point triples in the half-plane");
  ctx.record.scalar("symmetry_error", worst_symmetry, "max |d(a, b) - d(b, a)| over d_H and d_R");
  ctx.record.check("d_h_triangle_excess", worst_h, slack, "max d_H(a, c) - d_H(a, b) - d_H(b, c)");
  ctx.record.check("d_r_triangle_excess", worst_r, slack, "max d_R(a, c) - d_R(a, b) - d_R(b, c)");
  ctx.record.check("n_h_axis_error", worst_nh_axis, 0.0, "max |N_H(m, 0) - |m|| and |N_H(0, S) - |S||");
  ctx.record.check("geodesic_step_error", worst_geodesic, geodesic_tol,
                   "max |geodesic(P, F, C, 1) - discrete step| over both coordinates");
}

}  // namespace ghmc::experiments::detail
