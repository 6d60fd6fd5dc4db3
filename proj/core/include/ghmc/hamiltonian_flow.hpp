#pragma once

// Exact Hamiltonian motion for the quadratic energy
//   H(Q, P) = 1/2 (Q - mu_f)^T F (Q - mu_f) + 1/2 (P - mu_g)^T G (P - mu_g)
// with commuting F = Sigma_f^-1 and G = Sigma_g^-1:
//   Q(t) = mu_f + C q~ + A S p~,   P(t) = mu_g - A^-1 S q~ + C p~.

#include "ghmc/ghmc_operator.hpp"

namespace ghmc {

struct PhasePoint {
  Vector q;
  Vector p;
};

class HamiltonianSpec {
 public:
  /// Throws NonCommutingError / DimensionMismatchError.
  HamiltonianSpec(GaussianParams target, GaussianParams auxiliary, double time);
  explicit HamiltonianSpec(const GhmcStep& step);

  const GaussianParams& target() const { return target_; }
  const GaussianParams& auxiliary() const { return auxiliary_; }
  const FlowMatrices& flow() const { return flow_; }
  double time() const { return flow_.time; }
  long dim() const { return target_.dim(); }

  /// Same target and auxiliary, flow for a different duration.
  HamiltonianSpec with_time(double time) const;

  const Matrix& precision_f() const { return precision_f_; }
  const Matrix& precision_g() const { return precision_g_; }

 private:
  GaussianParams target_;
  GaussianParams auxiliary_;
  FlowMatrices flow_;
  Matrix precision_f_;
  Matrix precision_g_;
};

PhasePoint flow(const HamiltonianSpec& spec, const PhasePoint& z);

/// 1/2 q~^T F q~ + 1/2 p~^T G p~ (additive constant dropped).
double energy(const HamiltonianSpec& spec, const PhasePoint& z);

/// The 2d x 2d linear part [[C, A S], [-A^-1 S, C]] of the flow.
Matrix flow_jacobian(const HamiltonianSpec& spec);
double flow_jacobian_determinant(const HamiltonianSpec& spec);

/// Classical RK4 on dQ/dt = G (P - mu_g), dP/dt = -F (Q - mu_f) for duration
/// t with fixed step dt (the last step is shortened to land on t). Independent
/// of the closed form; used as an oracle.
PhasePoint ode_oracle(const HamiltonianSpec& spec, const PhasePoint& z, double t, double dt);

}  // namespace ghmc
