#pragma once

#include "ghmc/spd.hpp"

namespace ghmc {

struct HullProjection {
  double distance = 0.0;
  /// Nearest point of the hull.
  Vector point;
  /// Convex weights over the input points (sum to 1, non-negative).
  Vector weights;
  int iterations = 0;
};

/// Euclidean projection of x onto conv{columns of points}.
///
/// Wolfe's nearest-point algorithm: finite, exact up to rounding, and cheap
/// for the handful of vertices a target mixture has.
HullProjection project_onto_hull(const Matrix& points, const Vector& x);

}  // namespace ghmc
