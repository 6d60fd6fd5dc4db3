#include "ghmc/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "ghmc/errors.hpp"

namespace ghmc {

GaussianParams::GaussianParams(Vector mean, SpdMatrix cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  require_same_dim(mean_.size(), cov_.dim(), "GaussianParams mean/cov");
  if (!mean_.allFinite()) throw Error("GaussianParams: non-finite mean");
}

GaussianParams GaussianParams::univariate(double mean, double variance) {
  return GaussianParams(Vector::Constant(1, mean), SpdMatrix(Matrix::Constant(1, 1, variance)));
}

double GaussianParams::normalizing_constant() const {
  return std::exp(-0.5 * static_cast<double>(dim()) * std::log(2.0 * std::numbers::pi) -
                  0.5 * cov_.log_determinant());
}

double GaussianParams::log_density(const Vector& q) const {
  require_same_dim(q.size(), dim(), "GaussianParams::log_density");
  const Vector z = cov_.eigenvectors().transpose() * (q - mean_);
  const double quad = (z.array().square() / cov_.eigenvalues().array()).sum();
  return -0.5 * static_cast<double>(dim()) * std::log(2.0 * std::numbers::pi) -
         0.5 * cov_.log_determinant() - 0.5 * quad;
}

double GaussianParams::density(const Vector& q) const { return std::exp(log_density(q)); }

double normal_pdf(double x, double mean, double variance) {
  const double z = x - mean;
  return std::exp(-0.5 * z * z / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

}  // namespace ghmc
