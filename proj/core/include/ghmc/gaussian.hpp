#pragma once

#include "ghmc/spd.hpp"

namespace ghmc {

/// N(mean, cov) on R^d.
class GaussianParams {
 public:
  GaussianParams(Vector mean, SpdMatrix cov);

  static GaussianParams univariate(double mean, double variance);

  long dim() const { return mean_.size(); }
  const Vector& mean() const { return mean_; }
  const SpdMatrix& cov() const { return cov_; }

  /// (2 pi)^(-d/2) Det(cov)^(-1/2).
  double normalizing_constant() const;
  double log_density(const Vector& q) const;
  double density(const Vector& q) const;

 private:
  Vector mean_;
  SpdMatrix cov_;
};

/// Univariate normal density without constructing a GaussianParams.
double normal_pdf(double x, double mean, double variance);

}  // namespace ghmc
