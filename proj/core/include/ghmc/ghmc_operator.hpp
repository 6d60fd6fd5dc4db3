#pragma once

// One step of Gaussian Hamiltonian Monte Carlo acting on Gaussian inputs.
//
// With target f ~ N(mu_f, Sigma_f), auxiliary g ~ N(mu_g, Sigma_g) whose
// covariances commute, and integration time t, a Gaussian input
// h ~ N(mu_h, Sigma_h) is mapped to
//
//   mu'    = mu_f + C (mu_h - mu_f)
//   Sigma' = Sigma_f + C (Sigma_h - Sigma_f) C  =  C Sigma_h C + S Sigma_f S
//
// where C = cos(t sqrt(Sigma_f^-1 Sigma_g^-1)) and S the matching sine.

#include <cstddef>
#include <vector>

#include "ghmc/gaussian.hpp"
#include "ghmc/spd.hpp"

namespace ghmc {

/// Target, auxiliary and time of one GHMC transition, with the flow matrices
/// computed once at construction.
class GhmcStep {
 public:
  /// Throws DimensionMismatchError or NonCommutingError.
  GhmcStep(GaussianParams target, GaussianParams auxiliary, double time);

  const GaussianParams& target() const { return target_; }
  const GaussianParams& auxiliary() const { return auxiliary_; }
  double time() const { return flow_.time; }
  const FlowMatrices& flow() const { return flow_; }
  long dim() const { return target_.dim(); }

  /// 0 < C < I. When false the step is still valid but contraction-rate
  /// statements do not apply.
  bool contraction_positive() const { return flow_.contraction_in_unit_interval; }
  /// Spectral norm of C.
  double contraction_norm() const;

 private:
  GaussianParams target_;
  GaussianParams auxiliary_;
  FlowMatrices flow_;
};

/// The moment map. Both forms of the covariance update are evaluated and must
/// agree within tol::kIdentity (relative), otherwise IdentityViolationError.
GaussianParams ghmc_step(const GhmcStep& step, const GaussianParams& h);

/// Ordered record of (random) GHMC iteration.
struct IterationTrace {
  std::vector<GaussianParams> states;
  /// Index of the step / mixture component applied at each transition.
  std::vector<std::size_t> chosen;
  std::vector<Matrix> contraction_mats;

  std::size_t steps() const { return chosen.size(); }
  /// states.size() == chosen.size() + 1 == contraction_mats.size() + 1.
  bool consistent() const;
};

/// n-fold application of the same step; trace holds n + 1 states.
IterationTrace iterate_fixed(const GhmcStep& step, const GaussianParams& initial, std::size_t n);

/// Inputs of the quadratic-form decomposition: pairwise commuting F, A, C, S
/// with C^2 + S^2 = I, an arbitrary SPD H, and the offset h~ = mu_h - mu_f.
struct QuadraticInputs {
  Matrix f;
  Matrix a;
  Matrix c;
  Matrix s;
  SpdMatrix h;
  Vector h_tilde;
};

/// F = Sigma_f^-1, A/C/S from the step, H = Sigma_h^-1, h~ = mu_h - mu_f.
QuadraticInputs quadratic_inputs(const GhmcStep& step, const GaussianParams& h);

/// Completion of squares that isolates the momentum dependence:
///
///   (C q + A S p - h~)^T H (C q + A S p - h~) + (S q - A C p)^T F (S q - A C p)
///     == (p + X q - x)^T K (p + X q - x) + (q - y)^T Y (q - y) + zeta
///
/// with K = A(SHS + CFC)A, Y = (C H^-1 C + S F^-1 S)^-1,
/// X = -A^-1 (SHS + CFC)^-1 S (F - H) C, x = A^-1 (SHS + CFC)^-1 S H h~,
/// y = C h~ and zeta = 0.
///
/// The momentum enters with the sign of the flow, Q - mu_f = C q~ + A S p~.
/// Writing the first residual as (C q - A S p - h~) instead (p -> -p) flips the
/// signs of X and x.
struct QuadraticDecomposition {
  SpdMatrix k;
  SpdMatrix y_mat;
  Matrix x_mat;
  Vector x;
  Vector y;
  double zeta = 0.0;
  /// 1e-10 * ||h~||^2 * ||H||.
  double zeta_tolerance = 0.0;
};

/// Throws NonCommutingError if F, A, C, S are not pairwise commuting,
/// IdentityViolationError if C^2 + S^2 != I or |zeta| exceeds its tolerance.
QuadraticDecomposition quadratic_decomposition(const QuadraticInputs& in);

double quadratic_form_lhs(const QuadraticInputs& in, const Vector& q_tilde, const Vector& p_tilde);
double quadratic_form_rhs(const QuadraticDecomposition& dec, const Vector& q_tilde,
                          const Vector& p_tilde);

/// |Det(K) Det(Y) - Det(H) Det(G)| / (Det(H) Det(G)), from cached spectra.
double determinant_identity_check(const SpdMatrix& k, const SpdMatrix& y, const SpdMatrix& h,
                                  const SpdMatrix& g);

struct QuadratureOracleOptions {
  /// Integration over the p range where both h(Q) and g(P) are within
  /// halfwidth standard deviations of their means.
  double halfwidth = 10.0;
  double abs_tol = 1e-10;
};

/// 1-D only: T h(q) = integral of h(Q(q, p)) g(P(q, p)) dp at each grid point,
/// by adaptive Simpson. Throws QuadratureNotConvergedError.
std::vector<double> quadrature_oracle_1d(const GhmcStep& step, const GaussianParams& h,
                                         const std::vector<double>& q_grid,
                                         const QuadratureOracleOptions& options = {});

}  // namespace ghmc
