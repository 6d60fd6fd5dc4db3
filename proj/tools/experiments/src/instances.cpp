#include "ghmc/experiments/instances.hpp"

#include <cmath>
#include <random>

#include <Eigen/QR>

namespace ghmc::experiments {

double uniform(Engine& engine, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine);
}

double log_uniform(Engine& engine, double lo, double hi) {
  return std::exp(uniform(engine, std::log(lo), std::log(hi)));
}

Vector normal_vector(Engine& engine, long d, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(d);
  for (long i = 0; i < d; ++i) v(i) = normal(engine);
  return v;
}

Matrix random_orthonormal(Engine& engine, long d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(d, d);
  for (long c = 0; c < d; ++c) {
    for (long r = 0; r < d; ++r) g(r, c) = normal(engine);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long i = 0; i < d; ++i) {
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  }
  return q;
}

namespace {

Vector spectrum(Engine& engine, long d, double lo, double hi) {
  Vector v(d);
  for (long i = 0; i < d; ++i) v(i) = log_uniform(engine, lo, hi);
  return v;
}

}  // namespace

SpdMatrix random_spd(Engine& engine, long d, double lo, double hi) {
  const Matrix basis = random_orthonormal(engine, d);
  return SpdMatrix::from_spectrum(basis, spectrum(engine, d, lo, hi));
}

std::pair<SpdMatrix, SpdMatrix> random_commuting_pair(Engine& engine, long d, double lo, double hi) {
  const Matrix basis = random_orthonormal(engine, d);
  const Vector f = spectrum(engine, d, lo, hi);
  const Vector g = spectrum(engine, d, lo, hi);
  return build_commuting_pair(basis, f, g);
}

GaussianParams random_gaussian(Engine& engine, const SpdMatrix& cov, double mean_scale) {
  return GaussianParams(normal_vector(engine, cov.dim(), mean_scale), cov);
}

}  // namespace ghmc::experiments
