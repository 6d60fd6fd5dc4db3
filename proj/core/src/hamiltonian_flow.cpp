#include "ghmc/hamiltonian_flow.hpp"

#include <cmath>

#include "ghmc/errors.hpp"

namespace ghmc {

HamiltonianSpec::HamiltonianSpec(GaussianParams target, GaussianParams auxiliary, double time)
    : target_(std::move(target)),
      auxiliary_(std::move(auxiliary)),
      flow_(flow_matrices(target_.cov(), auxiliary_.cov(), time)),
      precision_f_(target_.cov().apply(MatrixFunction::kInverse)),
      precision_g_(auxiliary_.cov().apply(MatrixFunction::kInverse)) {}

HamiltonianSpec::HamiltonianSpec(const GhmcStep& step)
    : target_(step.target()),
      auxiliary_(step.auxiliary()),
      flow_(step.flow()),
      precision_f_(target_.cov().apply(MatrixFunction::kInverse)),
      precision_g_(auxiliary_.cov().apply(MatrixFunction::kInverse)) {}

HamiltonianSpec HamiltonianSpec::with_time(double time) const {
  return HamiltonianSpec(target_, auxiliary_, time);
}

namespace {

void check_point(const HamiltonianSpec& spec, const PhasePoint& z) {
  require_same_dim(z.q.size(), spec.dim(), "phase point q");
  require_same_dim(z.p.size(), spec.dim(), "phase point p");
}

}  // namespace

PhasePoint flow(const HamiltonianSpec& spec, const PhasePoint& z) {
  check_point(spec, z);
  const auto& fm = spec.flow();
  const Vector q_tilde = z.q - spec.target().mean();
  const Vector p_tilde = z.p - spec.auxiliary().mean();
  return {spec.target().mean() + fm.c * q_tilde + fm.a * (fm.s * p_tilde),
          spec.auxiliary().mean() - fm.a_inv * (fm.s * q_tilde) + fm.c * p_tilde};
}

double energy(const HamiltonianSpec& spec, const PhasePoint& z) {
  check_point(spec, z);
  const Vector q_tilde = z.q - spec.target().mean();
  const Vector p_tilde = z.p - spec.auxiliary().mean();
  return 0.5 * q_tilde.dot(spec.precision_f() * q_tilde) +
         0.5 * p_tilde.dot(spec.precision_g() * p_tilde);
}

Matrix flow_jacobian(const HamiltonianSpec& spec) {
  const auto& fm = spec.flow();
  const long d = spec.dim();
  Matrix j(2 * d, 2 * d);
  j.topLeftCorner(d, d) = fm.c;
  j.topRightCorner(d, d) = fm.a * fm.s;
  j.bottomLeftCorner(d, d) = -fm.a_inv * fm.s;
  j.bottomRightCorner(d, d) = fm.c;
  return j;
}

double flow_jacobian_determinant(const HamiltonianSpec& spec) {
  return flow_jacobian(spec).partialPivLu().determinant();
}

PhasePoint ode_oracle(const HamiltonianSpec& spec, const PhasePoint& z, double t, double dt) {
  check_point(spec, z);
  if (!(dt > 0.0)) throw Error("ode_oracle: dt must be positive");
  const Vector& mu_f = spec.target().mean();
  const Vector& mu_g = spec.auxiliary().mean();
  const Matrix& f = spec.precision_f();
  const Matrix& g = spec.precision_g();

  auto dq = [&](const Vector& p) -> Vector { return g * (p - mu_g); };
  auto dp = [&](const Vector& q) -> Vector { return -(f * (q - mu_f)); };

  Vector q = z.q;
  Vector p = z.p;
  const double direction = t < 0.0 ? -1.0 : 1.0;
  const double total = std::abs(t);
  const long full_steps = static_cast<long>(std::floor(total / dt));
  const double rest = total - static_cast<double>(full_steps) * dt;

  auto rk4 = [&](double h) {
    h *= direction;
    const Vector k1q = dq(p);
    const Vector k1p = dp(q);
    const Vector k2q = dq(p + 0.5 * h * k1p);
    const Vector k2p = dp(q + 0.5 * h * k1q);
    const Vector k3q = dq(p + 0.5 * h * k2p);
    const Vector k3p = dp(q + 0.5 * h * k2q);
    const Vector k4q = dq(p + h * k3p);
    const Vector k4p = dp(q + h * k3q);
    q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  };
  for (long i = 0; i < full_steps; ++i) rk4(dt);
  if (rest > 1e-14 * dt) rk4(rest);
  return {q, p};
}

}  // namespace ghmc
