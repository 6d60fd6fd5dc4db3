#pragma once

// Univariate random-target GHMC with a fixed contraction alpha, and the
// geometry of the (mu, Sigma) half-plane of univariate normals.
//
// With targets (M_k, S2_k) drawn i.i.d. and every step contracting by alpha,
//   mu_k = alpha^k mu_0 + sum_j (1 - alpha) alpha^(k-j) M_j
//   s2_k = alpha^2k s2_0 + sum_j (1 - alpha^2) alpha^(2(k-j)) S2_j
// and X_k ~ N(mu_k, s2_k) converges in law to X_inf, whose characteristic
// function is Psi(xi, i xi^2 / 2) with
//   Psi(psi, zeta) = prod_{j >= 0} Phi(a_j psi, b_j zeta),
//   a_j = (1 - alpha) alpha^j,  b_j = (1 - alpha^2) alpha^2j.

#include <complex>
#include <cstddef>
#include <vector>

#include "ghmc/random_targets.hpp"
#include "ghmc/rng.hpp"
#include "ghmc/sampler.hpp"

namespace ghmc {

using Complex = std::complex<double>;

struct UnivariateComponent {
  double prob;
  double mean;
  double variance;
};

class UnivariateMixture {
 public:
  /// Probabilities must sum to 1 within 1e-12, variances be positive, and
  /// alpha lie in (0, 1).
  UnivariateMixture(std::vector<UnivariateComponent> components, double alpha);

  const std::vector<UnivariateComponent>& components() const { return components_; }
  double alpha() const { return alpha_; }

  /// E[M], E[S^2], E[M^2], Var(M).
  double mean_m() const;
  double mean_s2() const;
  double second_moment_m() const;
  double var_m() const;
  double max_abs_mean() const;
  double max_variance() const;

  double a(std::size_t j) const;
  double b(std::size_t j) const;

  std::size_t draw(RngStream::Engine& engine) const;

  /// The same law as a FixedAlpha TargetMixture with the given auxiliary.
  TargetMixture to_target_mixture(double auxiliary_mean = 0.0,
                                  double auxiliary_variance = 1.0) const;

 private:
  std::vector<UnivariateComponent> components_;
  double alpha_;
  std::vector<double> cumulative_;
};

/// Phi(psi, zeta) = E[exp(i (psi M + zeta S^2))], an exact finite sum.
Complex phi(const UnivariateMixture& mix, double psi, Complex zeta);

/// log Phi(a xi, (i/2) b xi^2) on the principal branch.
Complex log_phi_factor(const UnivariateMixture& mix, double a, double b, double xi);

/// prod_{j < terms} Phi(a_j psi, b_j zeta).
Complex psi_partial_product(const UnivariateMixture& mix, double psi, Complex zeta,
                            std::size_t terms);

struct PsiValue {
  Complex value;
  std::size_t terms = 0;
  /// alpha^J |psi| max|m| + alpha^2J |zeta| max s^2 at the stopping index J.
  double tail_bound = 0.0;
};

/// Infinite product truncated at the first J whose tail bound is below tol.
PsiValue psi_limit(const UnivariateMixture& mix, double psi, Complex zeta, double tol);

struct LimitMoments {
  double mean;
  double second_moment;
  double variance;
};

/// E[X_inf] = E[M],
/// E[X_inf^2] = E[M]^2 + E[S^2] + (1 - alpha) / (1 + alpha) Var(M),
/// Var(X_inf) = E[S^2] + (1 - alpha) / (1 + alpha) Var(M).
LimitMoments limit_moments(const UnivariateMixture& mix);

struct TransientMoments {
  double mean;
  double variance;
};

/// (E[mu_k], E[s2_k]) from (mu_0, s2_0).
TransientMoments transient_moments(const UnivariateMixture& mix, double mu0, double sigma0_sq,
                                   std::size_t k);

/// k steps of the scalar recursion for one replica; returns (mu_k, s2_k).
std::pair<double, double> iterate_univariate(const UnivariateMixture& mix, double mu0,
                                             double sigma0_sq, std::size_t k,
                                             RngStream::Engine& engine);

/// Smallest J with alpha^J max|m| + alpha^2J max s^2 < 1e-12.
std::size_t default_truncation(const UnivariateMixture& mix);

/// n draws of X ~ N(sum_{j<J} a_j M_j, sum_{j<J} b_j S2_j). Throws if J does
/// not meet the default_truncation bound.
SampleBatch sample_x_infty(const UnivariateMixture& mix, long n, std::size_t truncation,
                           const RngStream& rng);

/// n replicas of X_k ~ N(mu_k, s2_k) started from (mu0, s2_0).
SampleBatch sample_chain_output(const UnivariateMixture& mix, double mu0, double sigma0_sq,
                                std::size_t k, long n, const RngStream& rng);

/// Empirical characteristic function of scalar samples with delta-method
/// standard errors for modulus and argument.
struct EmpiricalCf {
  Complex value;
  double se_real = 0.0;
  double se_imag = 0.0;
  double se_modulus = 0.0;
  double se_argument = 0.0;
};

EmpiricalCf empirical_cf(const Vector& samples, double xi);

// ---- half-plane geometry ----

struct HalfPlanePoint {
  double mu = 0.0;
  double sigma = 0.0;  ///< variance coordinate
};

/// N_H(m, Sigma) = integral_0^1 sqrt(m^2 + (2 w Sigma)^2) dw, closed form.
double n_h(double m, double sigma);
/// d_H(P0, P1) = N_H(P1 - P0).
double d_h(const HalfPlanePoint& p0, const HalfPlanePoint& p1);
/// R(mu, Sigma) = sqrt(mu^2 + |Sigma|); not a norm.
double r_function(double mu, double sigma);
/// d_R(P0, P1) = R(P0 - P1).
double d_r(const HalfPlanePoint& p0, const HalfPlanePoint& p1);

/// Continuous interpolation of the discrete step toward the target F:
///   mu(t) = C^t mu_0 + (1 - C^t) mu_F,  Sigma(t) = C^2t Sigma_0 + (1 - C^2t) Sigma_F.
/// t = 1 is one GHMC step with contraction C; t -> inf reaches F. The curve is
/// the parabola Sigma - Sigma_F = (Sigma_0 - Sigma_F) (mu - mu_F)^2 / (mu_0 - mu_F)^2
/// (a vertical segment when mu_0 = mu_F).
HalfPlanePoint geodesic(const HalfPlanePoint& p0, const HalfPlanePoint& target, double c, double t);

/// One discrete step ((1 - C) mu_F + C mu, (1 - C^2) Sigma_F + C^2 Sigma).
HalfPlanePoint half_plane_step(const HalfPlanePoint& p, const HalfPlanePoint& target, double c);

}  // namespace ghmc
