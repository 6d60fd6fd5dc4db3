#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ghmc/errors.hpp"
#include "ghmc/experiments/instances.hpp"
#include "ghmc/ghmc_operator.hpp"
#include "ghmc/quadrature.hpp"

namespace ghmc {
namespace {

using experiments::normal_vector;
using experiments::random_commuting_pair;
using experiments::random_gaussian;
using experiments::random_spd;

GaussianParams uni(double m, double v) { return GaussianParams::univariate(m, v); }

GhmcStep random_step(RngStream::Engine& engine, long d, double t) {
  auto [sf, sg] = random_commuting_pair(engine, d, 0.3, 3.0);
  return GhmcStep(random_gaussian(engine, sf, 1.0), random_gaussian(engine, sg, 1.0), t);
}

std::vector<double> grid_around(double mu, double var, int n = 81) {
  std::vector<double> g;
  const double sd = std::sqrt(var);
  for (int k = 0; k < n; ++k) g.push_back(mu - 4 * sd + 8 * sd * k / (n - 1));
  return g;
}

double sup_density_gap(const GhmcStep& step, const GaussianParams& h, double mu, double var) {
  const auto grid = grid_around(mu, var);
  const auto numeric = quadrature_oracle_1d(step, h, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    worst = std::max(worst, std::abs(numeric[k] - normal_pdf(grid[k], mu, var)));
  }
  return worst;
}

TEST(GhmcStep, TargetIsFixedPoint) {
  RngStream::Engine engine(21);
  for (long d : {1, 2, 3, 5}) {
    const GhmcStep step = random_step(engine, d, 1.1);
    const GaussianParams out = ghmc_step(step, step.target());
    EXPECT_EQ(out.mean(), step.target().mean());
    EXPECT_LT((out.cov().matrix() - step.target().cov().matrix()).norm(), 1e-15);
  }
}

TEST(GhmcStep, ZeroTimeIsIdentity) {
  RngStream::Engine engine(22);
  const GhmcStep step = random_step(engine, 3, 0.0);
  const GaussianParams h = random_gaussian(engine, random_spd(engine, 3, 0.5, 2.0), 2.0);
  const GaussianParams out = ghmc_step(step, h);
  EXPECT_LT((out.mean() - h.mean()).norm(), 1e-14);
  EXPECT_LT((out.cov().matrix() - h.cov().matrix()).norm(), 1e-14);
}

TEST(GhmcStep, UnivariateHalfContraction) {
  const GhmcStep step(uni(0, 1), uni(0, 1), std::numbers::pi / 3);
  EXPECT_NEAR(step.flow().c(0, 0), 0.5, 1e-15);
  const GaussianParams h = uni(2, 5);
  const GaussianParams out = ghmc_step(step, h);
  EXPECT_NEAR(out.mean()(0), 1.0, 1e-15);
  EXPECT_NEAR(out.cov()(0, 0), 2.0, 1e-14);
  EXPECT_LT(sup_density_gap(step, h, 1.0, 2.0), 1e-8);
}

TEST(GhmcStep, QuadratureReproducesTargetAtFixedPoint) {
  const GhmcStep step(uni(0.7, 1.8), uni(-1.0, 0.6), 0.9);
  EXPECT_LT(sup_density_gap(step, step.target(), 0.7, 1.8), 1e-8);
}

TEST(GhmcStep, QuarterPeriodJumpsToTarget) {
  const double vf = 1.7, vg = 0.4;
  const double t = std::numbers::pi / 2 * std::sqrt(vf * vg);
  const GhmcStep step(uni(-0.5, vf), uni(0.3, vg), t);
  EXPECT_NEAR(step.flow().c(0, 0), 0.0, 1e-15);
  const GaussianParams h = uni(3.0, 0.2);
  const GaussianParams out = ghmc_step(step, h);
  EXPECT_NEAR(out.mean()(0), -0.5, 1e-14);
  EXPECT_NEAR(out.cov()(0, 0), vf, 1e-14);
  EXPECT_LT(sup_density_gap(step, h, -0.5, vf), 1e-8);
}

TEST(GhmcStep, MatchesLinearPushforwardWithNonCommutingInput) {
  RngStream::Engine engine(23);
  const GhmcStep step = random_step(engine, 3, 0.8);
  const GaussianParams h = random_gaussian(engine, random_spd(engine, 3, 0.2, 5.0), 2.0);
  const FlowMatrices& fm = step.flow();
  // Q = mu_f + C (q - mu_f) + A S (p - mu_g), q ~ h, p ~ g independent.
  const Matrix as = fm.a * fm.s;
  const Matrix cov = fm.c * h.cov().matrix() * fm.c.transpose() +
                     as * step.auxiliary().cov().matrix() * as.transpose();
  const Vector mean = step.target().mean() + fm.c * (h.mean() - step.target().mean());
  const GaussianParams out = ghmc_step(step, h);
  EXPECT_LT((out.mean() - mean).norm(), 1e-13);
  EXPECT_LT((out.cov().matrix() - cov).norm(), 1e-12);
}

TEST(GhmcStep, IterateFixedContractsGeometrically) {
  RngStream::Engine engine(24);
  const GhmcStep step = random_step(engine, 2, 0.5);
  const GaussianParams h = random_gaussian(engine, random_spd(engine, 2, 0.5, 2.0), 3.0);
  const IterationTrace trace = iterate_fixed(step, h, 30);
  ASSERT_EQ(trace.states.size(), 31u);
  EXPECT_TRUE(trace.consistent());
  Matrix ck = Matrix::Identity(2, 2);
  for (std::size_t k = 0; k <= 30; ++k) {
    const Vector want = ck * (h.mean() - step.target().mean());
    EXPECT_LT((trace.states[k].mean() - step.target().mean() - want).norm(), 1e-12);
    ck = step.flow().c * ck;
  }
}

TEST(GhmcStep, DimensionMismatchThrows) {
  const GhmcStep step(uni(0, 1), uni(0, 1), 0.5);
  const GaussianParams h(Vector::Zero(2), SpdMatrix::identity(2));
  EXPECT_THROW(ghmc_step(step, h), DimensionMismatchError);
}

TEST(QuadraticDecomposition, MatchingPrecisionAndCentredInput) {
  RngStream::Engine engine(25);
  const GhmcStep step = random_step(engine, 3, 0.7);
  const GaussianParams h(step.target().mean(), step.target().cov());
  const QuadraticInputs in = quadratic_inputs(step, h);
  const QuadraticDecomposition dec = quadratic_decomposition(in);
  EXPECT_LT(dec.x_mat.norm(), 1e-12);
  EXPECT_LT(dec.x.norm(), 1e-15);
  EXPECT_LT(dec.y.norm(), 1e-15);
  EXPECT_LT((dec.k.matrix() - in.a * in.f * in.a).norm(), 1e-12);
  EXPECT_LT((dec.y_mat.matrix() - in.f).norm(), 1e-12);
  EXPECT_EQ(dec.zeta, 0.0);
}

TEST(QuadraticDecomposition, ScalarEighthTurn) {
  // F = A = H = 1, C = S = 1/sqrt(2), h_tilde = 1.
  const GhmcStep step(uni(0, 1), uni(0, 1), std::numbers::pi / 4);
  const QuadraticInputs in = quadratic_inputs(step, uni(1, 1));
  const QuadraticDecomposition dec = quadratic_decomposition(in);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(dec.k(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(dec.y_mat(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(dec.x_mat(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(dec.x(0), r, 1e-15);
  EXPECT_NEAR(dec.y(0), r, 1e-15);
  EXPECT_NEAR(dec.zeta, 0.0, 1e-15);
  EXPECT_LT(determinant_identity_check(dec.k, dec.y_mat, in.h, SpdMatrix::identity(1)), 1e-15);
}

TEST(QuadraticDecomposition, IdentityAtRandomPhasePoints) {
  RngStream::Engine engine(26);
  const GhmcStep step = random_step(engine, 4, 1.2);
  const GaussianParams h = random_gaussian(engine, random_spd(engine, 4, 0.3, 3.0), 1.5);
  const QuadraticInputs in = quadratic_inputs(step, h);
  ASSERT_GT(commutator_norm(in.h.matrix(), in.f), 1e-3);
  const QuadraticDecomposition dec = quadratic_decomposition(in);
  for (int k = 0; k < 1000; ++k) {
    const Vector q = normal_vector(engine, 4, 2.0);
    const Vector p = normal_vector(engine, 4, 2.0);
    const double lhs = quadratic_form_lhs(in, q, p);
    const double rhs = quadratic_form_rhs(dec, q, p);
    ASSERT_LT(std::abs(lhs - rhs), 1e-9 * std::abs(lhs));
  }
}

TEST(QuadraticDecomposition, LeftSideUsesForwardFlowIntegrand) {
  const GhmcStep step(uni(0, 1), uni(0, 1), 0.6);
  const QuadraticInputs in = quadratic_inputs(step, uni(0.4, 2.0));
  const double c = std::cos(0.6), s = std::sin(0.6);
  const double q = 0.3, p = -1.1;
  const double r1 = c * q + s * p - 0.4;
  const double r2 = s * q - c * p;
  EXPECT_NEAR(quadratic_form_lhs(in, Vector::Constant(1, q), Vector::Constant(1, p)),
              r1 * r1 / 2.0 + r2 * r2, 1e-15);
}

TEST(DeterminantIdentity, DiagonalFamily) {
  // H = 2 I, G = I.
  const GhmcStep step(GaussianParams(Vector::Zero(2), SpdMatrix::identity(2)),
                      GaussianParams(Vector::Zero(2), SpdMatrix::identity(2)), 0.9);
  const QuadraticInputs in =
      quadratic_inputs(step, GaussianParams(Vector::Ones(2), SpdMatrix::diagonal(Vector::Constant(2, 0.5))));
  const QuadraticDecomposition dec = quadratic_decomposition(in);
  EXPECT_NEAR(dec.k.determinant() * dec.y_mat.determinant(), 4.0, 1e-13);
  EXPECT_LT(determinant_identity_check(dec.k, dec.y_mat, in.h, SpdMatrix::identity(2)), 1e-14);
}

TEST(DeterminantIdentity, RandomFiveDimensional) {
  RngStream::Engine engine(27);
  for (int trial = 0; trial < 10; ++trial) {
    const GhmcStep step = random_step(engine, 5, 0.9);
    const GaussianParams h = random_gaussian(engine, random_spd(engine, 5, 0.3, 3.0), 1.0);
    const QuadraticInputs in = quadratic_inputs(step, h);
    const QuadraticDecomposition dec = quadratic_decomposition(in);
    const double direct = dec.k.matrix().determinant() * dec.y_mat.matrix().determinant();
    const double expected = in.h.matrix().determinant() / step.auxiliary().cov().matrix().determinant();
    EXPECT_LT(std::abs(direct - expected) / expected, 1e-10);
    EXPECT_LT(determinant_identity_check(dec.k, dec.y_mat, in.h, step.auxiliary().cov().inverse()), 1e-10);
  }
}

TEST(AdaptiveSimpson, IntegratesGaussianDensity) {
  const auto r = adaptive_simpson([](double x) { return normal_pdf(x, 0.3, 2.0); }, -20.0, 20.0, 1e-12);
  EXPECT_NEAR(r.value, 1.0, 1e-11);
  EXPECT_GT(r.evaluations, 0);
}

TEST(AdaptiveSimpson, ReportsNonConvergence) {
  EXPECT_THROW(adaptive_simpson([](double x) { return 1.0 / std::sqrt(std::abs(x)); }, -1.0, 1.0, 1e-14, 1, 8),
               QuadratureNotConvergedError);
}

}  // namespace
}  // namespace ghmc
