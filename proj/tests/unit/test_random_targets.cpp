#include <cmath>

#include <gtest/gtest.h>

#include "ghmc/errors.hpp"
#include "ghmc/random_targets.hpp"
#include "ghmc/univariate.hpp"

namespace ghmc {
namespace {

Vector vec2(double a, double b) { return Eigen::Vector2d(a, b); }

GaussianParams uni(double m, double v) { return GaussianParams::univariate(m, v); }
SpdMatrix scalar_cov(double v) { return SpdMatrix(Matrix::Constant(1, 1, v)); }
SpdMatrix diag2(double a, double b) { return SpdMatrix(Eigen::Vector2d(a, b).asDiagonal().toDenseMatrix()); }

MixtureComponent comp1(double p, double m, double v) { return {p, Vector::Constant(1, m), scalar_cov(v)}; }

UnivariateMixture two_point(double alpha) {
  return UnivariateMixture({{0.5, -1.0, 1.0}, {0.5, 1.0, 1.0}}, alpha);
}

TargetMixture commuting_d2() {
  return TargetMixture({{0.5, vec2(1.0, 0.0), diag2(0.5, 2.0)},
                        {0.3, vec2(-1.0, 1.0), diag2(1.0, 0.8)},
                        {0.2, vec2(0.0, -2.0), diag2(2.0, 1.5)}},
                       GaussianParams(Vector::Zero(2), diag2(1.0, 1.0)), FixedTime{0.9});
}

TEST(TargetMixture, Validation) {
  EXPECT_THROW(TargetMixture({comp1(0.5, 0, 1), comp1(0.4, 1, 1)}, uni(0, 1), FixedTime{1.0}), Error);
  EXPECT_THROW(TargetMixture({comp1(1.0, 0, 1)}, uni(0, 1), FixedAlpha{1.0}), Error);
  EXPECT_THROW(TargetMixture({{1.0, Vector::Zero(2), diag2(1, 2)}}, uni(0, 1), FixedTime{1.0}), Error);
  const Matrix rot = (Matrix(2, 2) << 2.0, 0.5, 0.5, 1.0).finished();
  EXPECT_THROW(TargetMixture({{1.0, Vector::Zero(2), SpdMatrix(rot)}},
                             GaussianParams(Vector::Zero(2), diag2(1, 3)), FixedTime{1.0}),
               NonCommutingError);
}

TEST(TargetMixture, FixedAlphaContractsByAlpha) {
  const TargetMixture mix({comp1(0.2, 0, 0.3), comp1(0.8, 2, 7.0)}, uni(1, 2), FixedAlpha{0.4});
  for (std::size_t j = 0; j < mix.size(); ++j) EXPECT_NEAR(mix.step(j).flow().c(0, 0), 0.4, 1e-14);
  EXPECT_NEAR(mix.contraction_norm(), 0.4, 1e-14);
}

TEST(IterateRandom, SingleComponentIsFixedIteration) {
  const TargetMixture mix({comp1(1.0, 2.0, 3.0)}, uni(0, 1), FixedTime{0.7});
  const IterationTrace random = iterate_random(mix, uni(-4, 0.5), 25, RngStream(3));
  const IterationTrace fixed = iterate_fixed(mix.step(0), uni(-4, 0.5), 25);
  ASSERT_TRUE(random.consistent());
  EXPECT_NEAR(random.states.back().mean()(0), fixed.states.back().mean()(0), 1e-13);
  EXPECT_NEAR(random.states.back().cov().matrix()(0, 0), fixed.states.back().cov().matrix()(0, 0), 1e-13);
}

TEST(IterateRandom, ZeroStepsKeepsInitial) {
  const IterationTrace t = iterate_random(commuting_d2(), GaussianParams(vec2(1, 2), diag2(1, 1)), 0,
                                          RngStream(1));
  EXPECT_EQ(t.states.size(), 1u);
  EXPECT_EQ(t.steps(), 0u);
  EXPECT_TRUE(t.consistent());
}

TEST(IterateRandom, TwoPointTransientMeans) {
  const UnivariateMixture u = two_point(0.5);
  const TargetMixture mix = u.to_target_mixture();
  const std::size_t k = 200;
  const int replicas = 10000;
  double sum_mu = 0.0;
  double sum_mu2 = 0.0;
  double sum_s2 = 0.0;
  for (int r = 0; r < replicas; ++r) {
    const IterationTrace t = iterate_random(mix, uni(5.0, 0.25), k, RngStream(17).split(r));
    const double mu = t.states.back().mean()(0);
    sum_mu += mu;
    sum_mu2 += mu * mu;
    sum_s2 += t.states.back().cov().matrix()(0, 0);
  }
  const double mean_mu = sum_mu / replicas;
  const double var_mu = sum_mu2 / replicas - mean_mu * mean_mu;
  const TransientMoments expect = transient_moments(u, 5.0, 0.25, k);
  EXPECT_LT(std::abs(mean_mu - expect.mean), 5.0 * std::sqrt(var_mu / replicas));
  EXPECT_NEAR(sum_s2 / replicas, expect.variance, 1e-12);
  EXPECT_NEAR(var_mu, 1.0 / 3.0, 0.03);
}

TEST(IterateRandom, RejectsNonCommutingInitial) {
  const Matrix rot = (Matrix(2, 2) << 2.0, 0.5, 0.5, 1.0).finished();
  EXPECT_THROW(iterate_random(commuting_d2(), GaussianParams(Vector::Zero(2), SpdMatrix(rot)), 3, RngStream(1)),
               Error);
}

TEST(Affine, ZeroTimeIsIdentity) {
  const TargetMixture mix({{1.0, vec2(1, 2), diag2(0.5, 2)}}, GaussianParams(Vector::Zero(2), diag2(1, 1)),
                          FixedTime{0.0});
  const AffineCoefficients co = affine_coefficients(mix, 0);
  EXPECT_LT((co.a_mu - Matrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LT(co.b_mu.norm(), 1e-15);
  EXPECT_LT((co.a_sigma - Matrix::Identity(4, 4)).norm(), 1e-15);
  EXPECT_LT(co.b_sigma.norm(), 1e-15);
}

TEST(Affine, UnivariateAlphaCoefficients) {
  const UnivariateMixture u({{1.0, 3.0, 2.0}}, 0.3);
  const AffineCoefficients co = affine_coefficients(u.to_target_mixture(), 0);
  EXPECT_NEAR(co.a_mu(0, 0), 0.3, 1e-14);
  EXPECT_NEAR(co.b_mu(0), 0.7 * 3.0, 1e-13);
  EXPECT_NEAR(co.a_sigma(0, 0), 0.09, 1e-14);
  EXPECT_NEAR(co.b_sigma(0), 0.91 * 2.0, 1e-13);
}

TEST(Affine, MatchesMomentMap) {
  const TargetMixture mix = commuting_d2();
  const GaussianParams state(vec2(4.0, -3.0), diag2(0.3, 3.0));
  for (std::size_t j = 0; j < mix.size(); ++j) {
    const GaussianParams a = apply_affine(affine_coefficients(mix, j), state);
    const GaussianParams b = ghmc_step(mix.step(j), state);
    EXPECT_LT((a.mean() - b.mean()).norm(), 1e-13);
    EXPECT_LT((a.cov().matrix() - b.cov().matrix()).norm(), 1e-13);
  }
}

TEST(Affine, VectorizeRoundTrip) {
  const Matrix m = (Matrix(2, 2) << 1, 2, 3, 4).finished();
  const Vector v = vectorize(m);
  EXPECT_EQ(v(1), 2.0);
  EXPECT_EQ(v(2), 3.0);
  EXPECT_EQ(unvectorize(v, 2), m);
}

TEST(Lyapunov, SingleComponentIsLogContraction) {
  const TargetMixture mix({{1.0, vec2(0, 0), diag2(0.5, 2)}}, GaussianParams(Vector::Zero(2), diag2(1, 1)),
                          FixedTime{0.9});
  const double c = mix.step(0).contraction_norm();
  const LyapunovEstimate est = lyapunov_estimate(mix, 1000, RngStream(2), LyapunovSpace::kMean);
  EXPECT_NEAR(est.exponent, std::log(c), 1e-12);
  EXPECT_NEAR(est.mean_log_norm, std::log(c), 1e-14);
  EXPECT_EQ(est.factors, 1000u);
}

TEST(Lyapunov, FixedAlphaBothSpaces) {
  const TargetMixture mix = two_point(0.6).to_target_mixture();
  EXPECT_NEAR(lyapunov_estimate(mix, 5000, RngStream(4), LyapunovSpace::kMean).exponent, std::log(0.6), 1e-12);
  EXPECT_NEAR(lyapunov_estimate(mix, 5000, RngStream(4), LyapunovSpace::kCovariance).exponent,
              2.0 * std::log(0.6), 1e-12);
  const LyapunovEstimate e = lyapunov_estimate(mix, 10, RngStream(4), LyapunovSpace::kMean);
  EXPECT_EQ(e.log_plus_moment, 0.0);
}

TEST(Lyapunov, MatchesDirectProductOfDrawnSequence) {
  const TargetMixture mix = commuting_d2();
  const RngStream rng(9);
  const std::size_t n = 50;
  auto engine = rng.engine();
  Matrix product = Matrix::Identity(2, 2);
  for (std::size_t i = 0; i < n; ++i) product = mix.step(mix.draw(engine)).flow().c * product;
  const double direct = std::log(Eigen::JacobiSVD<Matrix>(product).singularValues()(0)) / n;
  EXPECT_NEAR(lyapunov_estimate(mix, n, rng, LyapunovSpace::kMean).exponent, direct, 1e-12);
}

TEST(Hull, UnivariateDistances) {
  const ConvexHullSpec spec =
      ConvexHullSpec::from_mixture(TargetMixture({comp1(0.5, -1, 1), comp1(0.5, 2, 4)}, uni(0, 1), FixedTime{1}));
  const HullDistance out = hull_distance(spec, uni(5.0, 9.0));
  EXPECT_TRUE(out.exact);
  EXPECT_DOUBLE_EQ(out.d_mu, 3.0);
  EXPECT_DOUBLE_EQ(out.d_sigma, 5.0);
  EXPECT_DOUBLE_EQ(out.mu_witness(0), 2.0);
  EXPECT_DOUBLE_EQ(out.sigma_witness(0, 0), 4.0);
  const HullDistance inside = hull_distance(spec, uni(0.5, 2.0));
  EXPECT_EQ(inside.d_mu, 0.0);
  EXPECT_EQ(inside.d_sigma, 0.0);
}

TEST(Hull, OneStepInequality) {
  const TargetMixture mix({comp1(0.3, -2, 0.5), comp1(0.5, 0.5, 1.5), comp1(0.2, 3, 2.5)}, uni(0, 1),
                          FixedTime{0.6});
  const ConvexHullSpec spec = ConvexHullSpec::from_mixture(mix);
  GaussianParams state = uni(10.0, 30.0);
  HullTracker tracker(spec, state);
  auto engine = RngStream(12).engine();
  for (int k = 0; k < 40; ++k) {
    const HullDistance before = tracker.current();
    const GhmcStep& step = mix.step(mix.draw(engine));
    state = ghmc_step(step, state);
    const HullDistance& after = tracker.advance(step, state);
    const double c = step.contraction_norm();
    EXPECT_LE(after.d_mu, c * before.d_mu + 1e-12);
    EXPECT_LE(after.d_sigma, c * c * before.d_sigma + 1e-12);
    EXPECT_NEAR(after.d_mu, hull_distance(spec, state).d_mu, 1e-12);
  }
}

TEST(Hull, MultivariateBoundIsZeroInside) {
  const TargetMixture mix = commuting_d2();
  const ConvexHullSpec spec = ConvexHullSpec::from_mixture(mix);
  const HullDistance out = hull_distance(spec, GaussianParams(mix.components()[0].mean, mix.components()[0].cov));
  EXPECT_FALSE(out.exact);
  EXPECT_LT(out.d_mu, 1e-12);
  EXPECT_LT(out.d_sigma, 1e-12);
  const HullDistance far = hull_distance(spec, GaussianParams(vec2(10, 0), diag2(9, 9)));
  EXPECT_GE(far.d_mu, 9.0 - 1e-12);
  EXPECT_GE(far.d_sigma, 7.0 - 1e-12);
}

TEST(Ks, KnownStatistics) {
  EXPECT_EQ(ks_distance({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_EQ(ks_distance({1, 2}, {3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(ks_distance({1, 2, 3, 4}, {3, 4, 5, 6}), 0.5);
}

}  // namespace
}  // namespace ghmc
