#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ghmc/experiments/instances.hpp"
#include "ghmc/hamiltonian_flow.hpp"

namespace ghmc {
namespace {

using experiments::normal_vector;
using experiments::random_commuting_pair;
using experiments::random_gaussian;

GaussianParams uni(double m, double v) { return GaussianParams::univariate(m, v); }
PhasePoint point(double q, double p) { return {Vector::Constant(1, q), Vector::Constant(1, p)}; }

HamiltonianSpec random_spec(RngStream::Engine& engine, long d, double t) {
  auto [sf, sg] = random_commuting_pair(engine, d, 0.3, 3.0);
  return HamiltonianSpec(random_gaussian(engine, sf, 1.0), random_gaussian(engine, sg, 1.0), t);
}

double gap(const PhasePoint& a, const PhasePoint& b) {
  return std::max((a.q - b.q).norm(), (a.p - b.p).norm());
}

TEST(Flow, EquilibriumIsFixed) {
  RngStream::Engine engine(31);
  const HamiltonianSpec spec = random_spec(engine, 3, 2.3);
  const PhasePoint z{spec.target().mean(), spec.auxiliary().mean()};
  EXPECT_LT(gap(flow(spec, z), z), 1e-15);
  EXPECT_LT(gap(ode_oracle(spec, z, 2.3, 1e-2), z), 1e-15);
}

TEST(Flow, ZeroTimeIsIdentity) {
  RngStream::Engine engine(32);
  const HamiltonianSpec spec = random_spec(engine, 2, 0.0);
  const PhasePoint z{normal_vector(engine, 2), normal_vector(engine, 2)};
  EXPECT_LT(gap(flow(spec, z), z), 1e-15);
  EXPECT_LT(gap(ode_oracle(spec, z, 0.0, 1e-3), z), 1e-15);
  EXPECT_NEAR(flow_jacobian_determinant(spec), 1.0, 1e-15);
}

TEST(Flow, QuarterPeriodRotation) {
  const HamiltonianSpec spec(uni(0, 1), uni(0, 1), std::numbers::pi / 2);
  const PhasePoint out = flow(spec, point(1, 0));
  EXPECT_NEAR(out.q(0), 0.0, 1e-15);
  EXPECT_NEAR(out.p(0), -1.0, 1e-15);
  const PhasePoint rk = ode_oracle(spec, point(1, 0), std::numbers::pi / 2, 1e-5);
  EXPECT_LT(gap(rk, out), 1e-11);
}

TEST(Flow, UnitCaseMatchesRk4) {
  const HamiltonianSpec spec(uni(0, 1), uni(0, 1), 1.0);
  const PhasePoint z = point(0.8, -0.3);
  EXPECT_LT(gap(ode_oracle(spec, z, 1.0, 1e-4), flow(spec, z)), 1e-12);
}

TEST(Flow, Rk4ErrorHasFourthOrder) {
  RngStream::Engine engine(33);
  auto [sf, sg] = random_commuting_pair(engine, 2, 0.035, 0.045);
  const HamiltonianSpec spec(random_gaussian(engine, sf, 1.0), random_gaussian(engine, sg, 1.0), 1.0);
  const PhasePoint z{normal_vector(engine, 2), normal_vector(engine, 2)};
  const PhasePoint exact = flow(spec, z);
  const double e1 = gap(ode_oracle(spec, z, 1.0, 1e-2), exact);
  const double e2 = gap(ode_oracle(spec, z, 1.0, 1e-3), exact);
  EXPECT_NEAR(std::log10(e1 / e2), 4.0, 0.1);
}

TEST(Flow, NegativeTimeReverses) {
  RngStream::Engine engine(34);
  const HamiltonianSpec spec = random_spec(engine, 3, 1.7);
  const PhasePoint z{normal_vector(engine, 3), normal_vector(engine, 3)};
  const PhasePoint back = flow(spec.with_time(-1.7), flow(spec, z));
  EXPECT_LT(gap(back, z), 1e-12);
  const PhasePoint rk = ode_oracle(spec, z, -0.5, 1e-3);
  EXPECT_LT(gap(rk, flow(spec.with_time(-0.5), z)), 1e-10);
}

TEST(Flow, MomentumFlipReversibility) {
  RngStream::Engine engine(35);
  const HamiltonianSpec spec = random_spec(engine, 2, 0.9);
  const PhasePoint z{normal_vector(engine, 2), normal_vector(engine, 2)};
  const Vector& mu_g = spec.auxiliary().mean();
  PhasePoint out = flow(spec, z);
  out.p = 2.0 * mu_g - out.p;
  PhasePoint back = flow(spec, out);
  back.p = 2.0 * mu_g - back.p;
  EXPECT_LT(gap(back, z), 1e-12);
}

TEST(Energy, KnownValues) {
  RngStream::Engine engine(36);
  const HamiltonianSpec spec = random_spec(engine, 2, 1.0);
  EXPECT_EQ(energy(spec, {spec.target().mean(), spec.auxiliary().mean()}), 0.0);
  EXPECT_NEAR(energy(HamiltonianSpec(uni(0, 1), uni(0, 1), 1.0), point(1, 0)), 0.5, 1e-16);
}

TEST(Energy, ConservedAlongRandomFlows) {
  RngStream::Engine engine(37);
  for (int trial = 0; trial < 200; ++trial) {
    const long d = 1 + trial % 5;
    const HamiltonianSpec spec = random_spec(engine, d, experiments::uniform(engine, -8.0, 8.0));
    const PhasePoint z{normal_vector(engine, d, 2.0), normal_vector(engine, d, 2.0)};
    const double e0 = energy(spec, z);
    EXPECT_LT(std::abs(energy(spec, flow(spec, z)) - e0), 1e-10 * e0);
  }
}

TEST(Jacobian, UnitDeterminant) {
  RngStream::Engine engine(38);
  for (double t : {0.3, 1.0, 4.7}) {
    EXPECT_NEAR(flow_jacobian_determinant(HamiltonianSpec(uni(0, 2), uni(0, 3), t)), 1.0, 1e-14);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const HamiltonianSpec spec = random_spec(engine, 4, experiments::uniform(engine, -5.0, 5.0));
    EXPECT_NEAR(flow_jacobian_determinant(spec), 1.0, 1e-10);
    EXPECT_NEAR(flow_jacobian(spec).determinant(), 1.0, 1e-10);
  }
}

TEST(Jacobian, MatchesFiniteDifferences) {
  RngStream::Engine engine(39);
  const HamiltonianSpec spec = random_spec(engine, 2, 1.3);
  const Matrix jac = flow_jacobian(spec);
  const PhasePoint z{normal_vector(engine, 2), normal_vector(engine, 2)};
  const PhasePoint base = flow(spec, z);
  for (long k = 0; k < 4; ++k) {
    PhasePoint zk = z;
    (k < 2 ? zk.q(k) : zk.p(k - 2)) += 1.0;
    const PhasePoint moved = flow(spec, zk);
    Vector col(4);
    col << moved.q - base.q, moved.p - base.p;
    EXPECT_LT((col - jac.col(k)).norm(), 1e-12);
  }
}

}  // namespace
}  // namespace ghmc
