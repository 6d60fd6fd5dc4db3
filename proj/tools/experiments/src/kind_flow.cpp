#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ghmc/experiments/instances.hpp"
#include "ghmc/hamiltonian_flow.hpp"
#include "kinds.hpp"

namespace ghmc::experiments::detail {

namespace {

Vector stack(const PhasePoint& z) {
  Vector v(z.q.size() + z.p.size());
  v << z.q, z.p;
  return v;
}

/// Least-squares slope of log10(err) against log10(dt).
double loglog_slope(const std::vector<double>& dt, const std::vector<double>& err) {
  const double n = static_cast<double>(dt.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < dt.size(); ++i) {
    const double x = std::log10(dt[i]);
    const double y = std::log10(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

void run_flow_check(Context& ctx) {
  const Params& p = ctx.params;
  const long flows = p.integer("flows", 1000, 1, 100000000);
  const auto dims = p.integers("dims", {1, 2, 3, 4, 5}, 1, 64);
  const double eig_lo = p.positive("eig_lo", 0.25);
  const double eig_hi = p.positive("eig_hi", 4.0);
  const double t_max = p.positive("t_max", 10.0);
  const double energy_tol = p.positive("energy_tolerance", 1e-10);
  const double jacobian_tol = p.positive("jacobian_tolerance", 1e-10);

  const Params rk = p.object_or_empty("rk4");
  const long rk_instances = rk.integer("instances", 3, 1, 1000);
  const long rk_dim = rk.integer("dim", 2, 1, 64);
  const double rk_eig_lo = rk.positive("eig_lo", 0.035);
  const double rk_eig_hi = rk.positive("eig_hi", 0.045);
  const double rk_time = rk.positive("time", 1.0);
  const auto rk_dts = rk.numbers("dt", {1e-2, 1e-3, 1e-4});
  const double slope_target = rk.positive("slope", 4.0);
  const double slope_tol = rk.positive("slope_tolerance", 0.2);
  rk.finish();
  p.finish();
  if (rk_dts.size() < 2) throw ConfigInvalid(rk.path() + ".dt", "need at least two step sizes");

  double worst_energy = 0.0;
  double worst_jacobian = 0.0;
  for (long i = 0; i < flows; ++i) {
    const long d = dims[static_cast<std::size_t>(i) % dims.size()];
    auto engine = ctx.rng.split(static_cast<std::uint64_t>(i)).engine();
    auto [sf, sg] = random_commuting_pair(engine, d, eig_lo, eig_hi);
    const HamiltonianSpec spec(random_gaussian(engine, sf, 2.0), random_gaussian(engine, sg, 2.0),
                               uniform(engine, -t_max, t_max));
    const PhasePoint z{normal_vector(engine, d, 2.0), normal_vector(engine, d, 2.0)};
    const double e0 = energy(spec, z);
    const double drift = std::abs(energy(spec, flow(spec, z)) - e0) / e0;
    const double jac = std::abs(flow_jacobian_determinant(spec) - 1.0);
    worst_energy = std::max(worst_energy, drift);
    worst_jacobian = std::max(worst_jacobian, jac);
    ctx.record.point(i, "energy_rel_drift", drift);
    ctx.record.point(i, "jacobian_det_error", jac);
  }
  ctx.record.series_meanings["energy_rel_drift"] = "|H(flow(z)) - H(z)| / H(z), per random flow";
  ctx.record.series_meanings["jacobian_det_error"] = "|det D flow - 1|, per random flow";
  ctx.record.scalar("flows", static_cast<double>(flows), "random (f, g, t, z) flows");
  ctx.record.check("energy_rel_drift", worst_energy, energy_tol, "max relative energy drift");
  ctx.record.check("jacobian_det_error", worst_jacobian, jacobian_tol, "max |det Jacobian - 1|");

  double worst_slope = 0.0;
  for (long i = 0; i < rk_instances; ++i) {
    auto engine = ctx.rng.split(static_cast<std::uint64_t>(flows + i)).engine();
    auto [sf, sg] = random_commuting_pair(engine, rk_dim, rk_eig_lo, rk_eig_hi);
    const HamiltonianSpec spec(random_gaussian(engine, sf, 1.0), random_gaussian(engine, sg, 1.0), rk_time);
    const PhasePoint z{normal_vector(engine, rk_dim), normal_vector(engine, rk_dim)};
    const Vector exact = stack(flow(spec, z));
    std::vector<double> errs;
    for (double dt : rk_dts) {
      const double err = (stack(ode_oracle(spec, z, rk_time, dt)) - exact).norm() / exact.norm();
      errs.push_back(err);
      char label[48];
      std::snprintf(label, sizeof label, "rk4_rel_error_dt=%g", dt);
      ctx.record.point(i, label, err);
      ctx.record.series_meanings[label] =
          "|RK4(dt) - exact flow| / |exact flow|, per high-frequency instance";
    }
    const double slope = loglog_slope(rk_dts, errs);
    ctx.record.point(i, "rk4_loglog_slope", slope);
    worst_slope = std::max(worst_slope, std::abs(slope - slope_target));
  }
  ctx.record.series_meanings["rk4_loglog_slope"] =
      "least-squares slope of log10 error against log10 dt, per high-frequency instance";
  ctx.record.check("rk4_slope_deviation", worst_slope, slope_tol,
                   "max |fitted log-log slope - expected order|");
}

}  // namespace ghmc::experiments::detail
