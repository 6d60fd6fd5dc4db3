#include "ghmc/convex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ghmc/errors.hpp"

namespace ghmc {

namespace {

/// Minimum-norm point of the affine hull of the columns of b:
/// minimize ||b a|| subject to sum(a) = 1, via the KKT system.
Vector affine_min_norm_weights(const Matrix& b) {
  const long k = b.cols();
  Matrix kkt = Matrix::Zero(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = b.transpose() * b;
  kkt.block(0, k, k, 1).setOnes();
  kkt.block(k, 0, 1, k).setOnes();
  Vector rhs = Vector::Zero(k + 1);
  rhs(k) = 1.0;
  return kkt.fullPivLu().solve(rhs).head(k);
}

}  // namespace

HullProjection project_onto_hull(const Matrix& points, const Vector& x) {
  const long m = points.cols();
  if (m == 0) throw Error("project_onto_hull: no points");
  require_same_dim(points.rows(), x.size(), "project_onto_hull");

  const Matrix shifted = points.colwise() - x;
  const double scale = std::max(1.0, shifted.colwise().squaredNorm().maxCoeff());
  const double eps = 1e-14 * scale;

  long first = 0;
  shifted.colwise().squaredNorm().minCoeff(&first);
  std::vector<long> active{first};
  std::vector<double> lambda{1.0};
  Vector w = shifted.col(first);

  HullProjection out;
  const int max_iterations = 100 * static_cast<int>(m) + 100;
  for (int iter = 0; iter < max_iterations; ++iter) {
    out.iterations = iter + 1;
    long j = 0;
    const Vector inner = shifted.transpose() * w;
    inner.minCoeff(&j);
    if (w.squaredNorm() - inner(j) <= eps ||
        std::find(active.begin(), active.end(), j) != active.end()) {
      break;
    }
    active.push_back(j);
    lambda.push_back(0.0);

    // Minor cycle: move toward the affine minimizer until it lies inside.
    for (;;) {
      Matrix b(shifted.rows(), static_cast<long>(active.size()));
      for (std::size_t i = 0; i < active.size(); ++i) b.col(static_cast<long>(i)) = shifted.col(active[i]);
      const Vector alpha = affine_min_norm_weights(b);
      if ((alpha.array() > 1e-15).all()) {
        lambda.assign(alpha.data(), alpha.data() + alpha.size());
        w = b * alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (alpha(static_cast<long>(i)) <= 1e-15) {
          const double denom = lambda[i] - alpha(static_cast<long>(i));
          if (denom > 0.0) theta = std::min(theta, lambda[i] / denom);
        }
      }
      std::vector<long> kept;
      std::vector<double> kept_lambda;
      for (std::size_t i = 0; i < active.size(); ++i) {
        const double li = lambda[i] + theta * (alpha(static_cast<long>(i)) - lambda[i]);
        if (li > 1e-15) {
          kept.push_back(active[i]);
          kept_lambda.push_back(li);
        }
      }
      if (kept.empty()) {
        kept.push_back(active.back());
        kept_lambda.push_back(1.0);
      }
      double total = 0.0;
      for (double v : kept_lambda) total += v;
      for (double& v : kept_lambda) v /= total;
      active = std::move(kept);
      lambda = std::move(kept_lambda);
      w.setZero();
      for (std::size_t i = 0; i < active.size(); ++i) w += lambda[i] * shifted.col(active[i]);
      if (active.size() == 1) break;
    }
  }

  out.weights = Vector::Zero(m);
  for (std::size_t i = 0; i < active.size(); ++i) out.weights(active[i]) = lambda[i];
  out.point = points * out.weights;
  out.distance = (out.point - x).norm();
  return out;
}

}  // namespace ghmc
