#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ghmc/errors.hpp"
#include "ghmc/experiments/instances.hpp"
#include "ghmc/spd.hpp"

namespace ghmc {
namespace {

using experiments::random_orthonormal;
using experiments::random_spd;

Matrix rotation(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

TEST(SpdMatrix, SqrtOfIdentityIsIdentity) {
  const Matrix r = SpdMatrix::identity(3).sqrt().matrix();
  EXPECT_LT((r - Matrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(SpdMatrix, SqrtOfDiagonal) {
  Vector d(2);
  d << 4.0, 9.0;
  const Matrix r = SpdMatrix::diagonal(d).sqrt().matrix();
  Matrix want = Matrix::Zero(2, 2);
  want(0, 0) = 2.0;
  want(1, 1) = 3.0;
  EXPECT_LT((r - want).norm(), 1e-14);
}

TEST(SpdMatrix, SqrtSquaresBack) {
  RngStream::Engine engine(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SpdMatrix m = random_spd(engine, 4, 0.1, 10.0);
    const Matrix r = m.sqrt().matrix();
    EXPECT_LT((r * r - m.matrix()).norm(), 1e-10);
    EXPECT_LT((r - r.transpose()).norm(), 1e-14);
  }
}

TEST(SpdMatrix, InverseAndLogAgreeWithDirectComputation) {
  RngStream::Engine engine(12);
  const SpdMatrix m = random_spd(engine, 5, 0.2, 5.0);
  EXPECT_LT((m.inverse().matrix() * m.matrix() - Matrix::Identity(5, 5)).norm(), 1e-12);
  EXPECT_NEAR(m.log_determinant(), std::log(m.matrix().determinant()), 1e-12);
  EXPECT_NEAR(m.apply(MatrixFunction::kLog).trace(), m.log_determinant(), 1e-12);
}

TEST(SpdMatrix, CosSinSatisfyPythagoras) {
  RngStream::Engine engine(13);
  const SpdMatrix m = random_spd(engine, 4, 0.1, 3.0);
  const Matrix c = m.apply(MatrixFunction::kCos);
  const Matrix s = m.apply(MatrixFunction::kSin);
  EXPECT_LT((c * c + s * s - Matrix::Identity(4, 4)).norm(), 1e-13);
}

TEST(SpdMatrix, RejectsAsymmetricAndIndefinite) {
  Matrix a(2, 2);
  a << 1.0, 0.5, 0.4, 1.0;
  EXPECT_THROW(SpdMatrix{a}, NotSpdError);
  Matrix b(2, 2);
  b << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(SpdMatrix{b}, NotSpdError);
  Matrix c(2, 2);
  c << 1.0, 0.0, 0.0, 0.0;
  EXPECT_THROW(SpdMatrix{c}, NotSpdError);
}

TEST(CommutingPair, DiagonalBasis) {
  Vector f(2), g(2);
  f << 1.0, 2.0;
  g << 3.0, 4.0;
  const auto [sf, sg] = build_commuting_pair(Matrix::Identity(2, 2), f, g);
  EXPECT_LT((sf.matrix() - Matrix(f.asDiagonal())).norm(), 1e-15);
  EXPECT_LT((sg.matrix() - Matrix(g.asDiagonal())).norm(), 1e-15);
}

TEST(CommutingPair, RotatedBasisCommutes) {
  Vector f(2), g(2);
  f << 1.0, 2.0;
  g << 3.0, 4.0;
  const auto [sf, sg] = build_commuting_pair(rotation(std::numbers::pi / 4), f, g);
  EXPECT_LT(commutator_norm(sf.matrix(), sg.matrix()), 1e-12);
  EXPECT_GT((sf.matrix() - Matrix(f.asDiagonal())).norm(), 0.1);
}

TEST(CommutingPair, ScalarMultipleOfIdentity) {
  const double s = 2.5;
  const auto [sf, sg] =
      build_commuting_pair(Matrix::Identity(3, 3), Vector::Ones(3), Vector::Constant(3, s));
  EXPECT_LT((sf.matrix() - Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_LT((sg.matrix() - s * Matrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(CommutingPair, RejectsNonOrthonormalBasis) {
  Matrix basis(2, 2);
  basis << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(build_commuting_pair(basis, Vector::Ones(2), Vector::Ones(2)), NotOrthonormalError);
}

TEST(FlowMatrices, IdentityCovariances) {
  const double t = 0.7;
  const FlowMatrices fm = flow_matrices(SpdMatrix::identity(3), SpdMatrix::identity(3), t);
  EXPECT_LT((fm.a - Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_LT((fm.c - std::cos(t) * Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_LT((fm.s - std::sin(t) * Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_TRUE(fm.contraction_in_unit_interval);
}

TEST(FlowMatrices, OneDimensionalContraction) {
  const double vf = 2.0, vg = 0.5, t = 0.8;
  const FlowMatrices fm =
      flow_matrices(SpdMatrix(Matrix::Constant(1, 1, vf)), SpdMatrix(Matrix::Constant(1, 1, vg)), t);
  const double c = std::cos(t / std::sqrt(vf * vg));
  EXPECT_NEAR(fm.c(0, 0), c, 1e-15);
  EXPECT_NEAR(fm.a(0, 0), std::sqrt(vf / vg), 1e-15);
  EXPECT_GT(c, 0.0);
  EXPECT_LT(c, 1.0);
  EXPECT_TRUE(fm.contraction_in_unit_interval);
}

TEST(FlowMatrices, PythagorasAndCommutationForRandomPair) {
  RngStream::Engine engine(14);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [sf, sg] = experiments::random_commuting_pair(engine, 3, 0.3, 3.0);
    const FlowMatrices fm = flow_matrices(sf, sg, 1.3);
    EXPECT_LT((fm.c * fm.c + fm.s * fm.s - Matrix::Identity(3, 3)).norm(), 1e-12);
    EXPECT_LT(commutator_norm(fm.c, sf.matrix()), 1e-12);
    EXPECT_LT((fm.a * fm.a_inv - Matrix::Identity(3, 3)).norm(), 1e-12);
    // A^2 = Sigma_f Sigma_g^-1.
    EXPECT_LT((fm.a * fm.a - sf.matrix() * sg.inverse().matrix()).norm(), 1e-11);
  }
}

TEST(FlowMatrices, NegativeTimeFlipsSine) {
  RngStream::Engine engine(15);
  const auto [sf, sg] = experiments::random_commuting_pair(engine, 2, 0.5, 2.0);
  const FlowMatrices fwd = flow_matrices(sf, sg, 0.9);
  const FlowMatrices bwd = flow_matrices(sf, sg, -0.9);
  EXPECT_LT((fwd.c - bwd.c).norm(), 1e-14);
  EXPECT_LT((fwd.s + bwd.s).norm(), 1e-14);
}

TEST(FlowMatrices, RejectsNonCommutingPair) {
  RngStream::Engine engine(16);
  const SpdMatrix sf = random_spd(engine, 3, 0.5, 2.0);
  const SpdMatrix sg = random_spd(engine, 3, 0.5, 2.0);
  EXPECT_THROW(flow_matrices(sf, sg, 1.0), NonCommutingError);
}

TEST(FlowMatrices, FlagsQuarterPeriod) {
  const FlowMatrices fm =
      flow_matrices(SpdMatrix::identity(1), SpdMatrix::identity(1), std::numbers::pi / 2);
  EXPECT_TRUE(fm.degenerate_angle);
  EXPECT_FALSE(fm.contraction_in_unit_interval);
}

TEST(Norms, OrthonormalityCheck) {
  RngStream::Engine engine(17);
  EXPECT_TRUE(is_orthonormal(random_orthonormal(engine, 5)));
  EXPECT_FALSE(is_orthonormal(2.0 * Matrix::Identity(3, 3)));
}

}  // namespace
}  // namespace ghmc
