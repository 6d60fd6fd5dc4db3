#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "ghmc/univariate.hpp"
#include "kinds.hpp"

namespace ghmc::experiments::detail {

namespace {

struct Moments {
  double mean, var, se_mean, se_var;
};

/// Sample mean and variance with distribution-free standard errors.
Moments sample_moments(const Vector& x) {
  const double n = static_cast<double>(x.size());
  const double m = x.mean();
  const Eigen::ArrayXd c = x.array() - m;
  const double m2 = c.square().mean();
  const double m4 = c.square().square().mean();
  return {m, m2 * n / (n - 1.0), std::sqrt(m2 / n), std::sqrt(std::max(0.0, m4 - m2 * m2) / n)};
}

Complex cf(const UnivariateMixture& mix, double xi, double tol) {
  return psi_limit(mix, xi, Complex(0.0, 0.5 * xi * xi), tol).value;
}

std::string label(const char* stem, double xi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_xi=%g", stem, xi);
  return buf;
}

}  // namespace

void run_limit_law(Context& ctx) {
  const Params& p = ctx.params;
  const UnivariateMixture mix = parse_univariate_mixture(p.object("mixture"));
  const auto parts = p.strings("parts", {"moments", "samples", "derivative", "cf"},
                               {"moments", "samples", "derivative", "cf"});
  const double expected_mean = p.number("expected_mean", mix.mean_m());
  const double expected_var = p.number("expected_variance", limit_moments(mix).variance);
  const double exact_tol = p.positive("exact_tolerance", 1e-15);
  const long n_samples = p.integer("samples", 1000000, 2, 1L << 40);
  const double z_max = p.positive("max_standard_score", 5.0);
  const double h = p.positive("derivative_step", 1e-2);
  const double deriv_tol = p.positive("derivative_tolerance", 1e-6);
  const double psi_tol = p.positive("psi_tolerance", 1e-15);
  const Params cfp = p.object_or_empty("cf");
  const long cf_steps = cfp.integer("steps", 200, 1, 100000000);
  const long cf_replicas = cfp.integer("replicas", 100000, 2, 1L << 40);
  const auto xis = cfp.numbers("xi", {0.25, 0.5, 1.0, 2.0});
  const double cf_mu0 = cfp.number("initial_mean", 3.0);
  const double cf_var0 = cfp.positive("initial_variance", 0.5);
  cfp.finish();
  p.finish();
  const std::set<std::string> enabled(parts.begin(), parts.end());

  ctx.record.scalar("expected_mean", expected_mean, "closed-form E[X_inf] from the config");
  ctx.record.scalar("expected_variance", expected_var, "closed-form Var(X_inf) from the config");

  if (enabled.count("moments")) {
    const LimitMoments lm = limit_moments(mix);
    ctx.record.scalar("limit_mean", lm.mean, "E[X_inf] from limit_moments");
    ctx.record.scalar("limit_variance", lm.variance, "Var(X_inf) from limit_moments");
    ctx.record.check("limit_moments_error",
                     std::max(std::abs(lm.mean - expected_mean), std::abs(lm.variance - expected_var)),
                     exact_tol, "max |limit_moments - closed form| over mean and variance");
  }

  if (enabled.count("samples")) {
    const SampleBatch batch =
        sample_x_infty(mix, n_samples, default_truncation(mix), ctx.rng.split(0));
    const Moments m = sample_moments(batch.draws.col(0));
    ctx.record.scalar("sample_mean", m.mean, "mean of sample_x_infty draws");
    ctx.record.scalar("sample_mean_se", m.se_mean, "standard error of sample_mean");
    ctx.record.scalar("sample_variance", m.var, "unbiased variance of sample_x_infty draws");
    ctx.record.scalar("sample_variance_se", m.se_var, "sqrt((m4 - m2^2) / n)");
    ctx.record.scalar("truncation", static_cast<double>(default_truncation(mix)),
                      "terms J of the truncated series per draw");
    const double z = std::max(std::abs(m.mean - expected_mean) / m.se_mean,
                              std::abs(m.var - expected_var) / m.se_var);
    ctx.record.check("sample_max_standard_score", z, z_max,
                     "max |sample moment - closed form| / se over mean and variance");
    if (ctx.options.dump_samples) ctx.record.samples = samples_to_json(batch.draws);
  }

  if (enabled.count("derivative")) {
    // Richardson-extrapolated central differences of Psi(xi, i xi^2 / 2) at 0.
    auto first = [&](double s) { return (cf(mix, s, psi_tol) - cf(mix, -s, psi_tol)) / (2.0 * s); };
    auto second = [&](double s) {
      return (cf(mix, s, psi_tol) - 2.0 + cf(mix, -s, psi_tol)) / (s * s);
    };
    const Complex d1 = (4.0 * first(h / 2.0) - first(h)) / 3.0;
    const Complex d2 = (4.0 * second(h / 2.0) - second(h)) / 3.0;
    const double mean = d1.imag();
    const double var = -d2.real() - mean * mean;
    ctx.record.scalar("derivative_mean", mean, "Im Psi'(0)");
    ctx.record.scalar("derivative_variance", var, "-Psi''(0) - (Im Psi'(0))^2");
    const double scale = std::max(std::abs(expected_var), 1e-300);
    ctx.record.check("derivative_variance_rel_error", std::abs(var - expected_var) / scale, deriv_tol,
                     "|numerical Var(X_inf) from Psi - closed form| / closed form");
    ctx.record.check("derivative_mean_error", std::abs(mean - expected_mean) / std::sqrt(scale),
                     deriv_tol, "|numerical E[X_inf] from Psi - closed form| / sd");
  }

  if (enabled.count("cf")) {
    const SampleBatch chain = sample_chain_output(mix, cf_mu0, cf_var0, static_cast<std::size_t>(cf_steps),
                                                  cf_replicas, ctx.rng.split(1));
    double worst = 0.0;
    for (std::size_t i = 0; i < xis.size(); ++i) {
      const double xi = xis[i];
      const EmpiricalCf emp = empirical_cf(chain.draws.col(0), xi);
      const PsiValue psi = psi_limit(mix, xi, Complex(0.0, 0.5 * xi * xi), psi_tol);
      const double z_mod = std::abs(std::abs(emp.value) - std::abs(psi.value)) / emp.se_modulus;
      const double z_arg = std::abs(std::arg(emp.value / psi.value)) / emp.se_argument;
      worst = std::max({worst, z_mod, z_arg});
      ctx.record.scalar(label("psi_modulus", xi), std::abs(psi.value), "|Psi(xi, i xi^2 / 2)|");
      ctx.record.scalar(label("psi_argument", xi), std::arg(psi.value), "arg Psi(xi, i xi^2 / 2)");
      ctx.record.scalar(label("psi_terms", xi), static_cast<double>(psi.terms), "factors used in the product");
      ctx.record.scalar(label("empirical_modulus", xi), std::abs(emp.value), "|empirical CF of X_k|");
      ctx.record.scalar(label("empirical_argument", xi), std::arg(emp.value), "arg empirical CF of X_k");
      ctx.record.scalar(label("z_modulus", xi), z_mod, "modulus gap / delta-method se");
      ctx.record.scalar(label("z_argument", xi), z_arg, "argument gap / delta-method se");
    }
    ctx.record.scalar("cf_chain_steps", static_cast<double>(cf_steps), "k of the chain output X_k");
    ctx.record.scalar("cf_replicas", static_cast<double>(cf_replicas), "independent chains");
    ctx.record.check("cf_max_standard_score", worst, z_max,
                     "max over xi of modulus and argument gaps in standard errors");
  }
}

}  // namespace ghmc::experiments::detail
