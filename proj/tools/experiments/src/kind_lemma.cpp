#include <algorithm>
#include <cmath>
#include <set>

#include "ghmc/experiments/instances.hpp"
#include "ghmc/ghmc_operator.hpp"
#include "kinds.hpp"

namespace ghmc::experiments::detail {

void run_lemma_check(Context& ctx) {
  const Params& p = ctx.params;
  const auto dims = p.integers("dims", {1, 2, 3, 4, 5}, 1, 64);
  const long instances = p.integer("instances", 50, 1, 1000000);
  const long points = p.integer("points", 1000, 1, 100000000);
  const double eig_lo = p.positive("eig_lo", 0.25);
  const double eig_hi = p.positive("eig_hi", 4.0);
  const double t_lo = p.positive("t_lo", 0.1);
  const double t_hi = p.positive("t_hi", 3.0);
  const double mean_scale = p.positive("mean_scale", 2.0);
  const double point_scale = p.positive("point_scale", 2.0);
  const double form_tol = p.positive("form_tolerance", 1e-9);
  const double det_tol = p.positive("determinant_tolerance", 1e-10);
  const auto checks = p.strings("checks", {"quadratic-form", "zeta", "determinant"},
                                {"quadratic-form", "zeta", "determinant"});
  p.finish();
  const std::set<std::string> enabled(checks.begin(), checks.end());

  double worst_form = 0.0;
  double worst_zeta = 0.0;
  double worst_det = 0.0;
  double min_commutator = HUGE_VAL;
  for (long i = 0; i < instances; ++i) {
    const long d = dims[static_cast<std::size_t>(i) % dims.size()];
    auto engine = ctx.rng.split(static_cast<std::uint64_t>(i)).engine();
    GhmcStep step = [&] {
      for (;;) {
        auto [sf, sg] = random_commuting_pair(engine, d, eig_lo, eig_hi);
        GhmcStep s(random_gaussian(engine, sf, mean_scale), random_gaussian(engine, sg, mean_scale),
                   uniform(engine, t_lo, t_hi));
        if (!s.flow().degenerate_angle) return s;
      }
    }();
    // Independent eigenbasis: H does not commute with F or G when d > 1.
    const GaussianParams h = random_gaussian(engine, random_spd(engine, d, eig_lo, eig_hi), mean_scale);
    const QuadraticInputs in = quadratic_inputs(step, h);
    if (d > 1) {
      min_commutator = std::min(min_commutator, commutator_norm(in.h.matrix(), in.f) /
                                                    (in.h.matrix().norm() * in.f.norm()));
    }
    const QuadraticDecomposition dec = quadratic_decomposition(in);

    double form = 0.0;
    for (long k = 0; k < points; ++k) {
      const Vector q = normal_vector(engine, d, point_scale);
      const Vector pt = normal_vector(engine, d, point_scale);
      const double lhs = quadratic_form_lhs(in, q, pt);
      const double rhs = quadratic_form_rhs(dec, q, pt);
      form = std::max(form, std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300}));
    }
    const double zeta_ratio = dec.zeta_tolerance > 0.0 ? std::abs(dec.zeta) / dec.zeta_tolerance
                                                       : (dec.zeta == 0.0 ? 0.0 : HUGE_VAL);
    const double det = determinant_identity_check(dec.k, dec.y_mat, in.h, step.auxiliary().cov().inverse());
    worst_form = std::max(worst_form, form);
    worst_zeta = std::max(worst_zeta, zeta_ratio);
    worst_det = std::max(worst_det, det);
    ctx.record.point(i, "form_rel_residual", form);
    ctx.record.point(i, "zeta_over_scale", zeta_ratio * 1e-10);
    ctx.record.point(i, "determinant_rel_error", det);
  }
  ctx.record.series_meanings["form_rel_residual"] =
      "max over phase points of |lhs - rhs| / max(|lhs|, |rhs|), per instance";
  ctx.record.series_meanings["zeta_over_scale"] = "|zeta| / (|h_tilde|^2 |H|), per instance";
  ctx.record.series_meanings["determinant_rel_error"] =
      "|Det(K) Det(Y) - Det(H) Det(G)| / (Det(H) Det(G)), per instance";
  ctx.record.scalar("instances", static_cast<double>(instances), "random (f, g, h, t) instances");
  ctx.record.scalar("points_per_instance", static_cast<double>(points), "random phase points");
  if (std::isfinite(min_commutator)) {
    ctx.record.scalar("min_relative_commutator_hf", min_commutator,
                      "min over d > 1 instances of |[H, F]| / (|H| |F|)");
  }

  if (enabled.count("quadratic-form")) {
    ctx.record.check("form_rel_residual", worst_form, form_tol,
                     "max relative residual of the completed-square identity");
  }
  if (enabled.count("zeta")) {
    ctx.record.check("zeta_over_scale", worst_zeta * 1e-10, 1e-10,
                     "max |zeta| / (|h_tilde|^2 |H|)");
  }
  if (enabled.count("determinant")) {
    ctx.record.check("determinant_rel_error", worst_det, det_tol,
                     "max relative error of Det(K) Det(Y) = Det(H) Det(G)");
  }
}

}  // namespace ghmc::experiments::detail
