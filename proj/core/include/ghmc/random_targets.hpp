#pragma once

// GHMC with a random potential: at every step the target is drawn i.i.d. from
// a finite mixture while the auxiliary stays fixed. The moments then follow
// the random affine recursion
//
//   mu_{k+1}    = C_{k+1} mu_k + (I - C_{k+1}) M_{k+1}
//   Sigma_{k+1} = C_{k+1}^T Sigma_k C_{k+1} + S2_{k+1} - C_{k+1}^T S2_{k+1} C_{k+1}
//
// where (M, S2) is the drawn target's mean and covariance.

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "ghmc/ghmc_operator.hpp"
#include "ghmc/rng.hpp"

namespace ghmc {

struct MixtureComponent {
  double prob;
  Vector mean;
  SpdMatrix cov;
};

/// Same integration time for every component.
struct FixedTime {
  double t;
};

/// Univariate only: t_j = s_j sigma_g arccos(alpha), so every component
/// contracts by exactly alpha.
struct FixedAlpha {
  double alpha;
};

using TimeRule = std::variant<FixedTime, FixedAlpha>;

class TargetMixture {
 public:
  /// Validates: probabilities in (0, 1] summing to 1 within 1e-12, matching
  /// dimensions, every component covariance commuting with the auxiliary one,
  /// and for FixedAlpha d = 1 with alpha in (0, 1).
  TargetMixture(std::vector<MixtureComponent> components, GaussianParams auxiliary,
                TimeRule time_rule);

  long dim() const { return auxiliary_.dim(); }
  std::size_t size() const { return components_.size(); }
  const std::vector<MixtureComponent>& components() const { return components_; }
  const GaussianParams& auxiliary() const { return auxiliary_; }
  const TimeRule& time_rule() const { return time_rule_; }

  /// Precomputed transition for component j.
  const GhmcStep& step(std::size_t j) const { return steps_.at(j); }

  /// Inverse-CDF draw of a component index from one uniform variate.
  std::size_t draw(RngStream::Engine& engine) const;

  /// sup_j ||C_j|| (spectral norm).
  double contraction_norm() const;

 private:
  std::vector<MixtureComponent> components_;
  GaussianParams auxiliary_;
  TimeRule time_rule_;
  std::vector<GhmcStep> steps_;
  std::vector<double> cumulative_;
};

/// k random GHMC steps from `initial`; components drawn from rng.engine().
/// `initial` must commute with the auxiliary and every component covariance.
IterationTrace iterate_random(const TargetMixture& mix, const GaussianParams& initial,
                              std::size_t k, const RngStream& rng);

/// X_{k+1} = A X_k + B form of one step, for the mean and for row-major
/// vectorized covariance. a_sigma has entry ((j, l), (m, n)) = C_mj C_nl.
struct AffineCoefficients {
  Matrix a_mu;
  Vector b_mu;
  Matrix a_sigma;
  Vector b_sigma;
};

AffineCoefficients affine_coefficients(const TargetMixture& mix, std::size_t component);

/// Applies both affine maps to a state.
GaussianParams apply_affine(const AffineCoefficients& coeffs, const GaussianParams& state);

Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, long dim);

enum class LyapunovSpace { kMean, kCovariance };

struct LyapunovEstimate {
  /// n^-1 log ||A_n ... A_1||.
  double exponent = 0.0;
  /// E[log+ ||A||] over the mixture (finite for a finite mixture).
  double log_plus_moment = 0.0;
  /// E[log ||A||]; negative is the classical sufficient condition.
  double mean_log_norm = 0.0;
  std::size_t factors = 0;
};

/// Product of n i.i.d. multipliers, rescaled by its Frobenius norm every 32
/// factors; the accumulated log scale makes the final log-norm exact.
LyapunovEstimate lyapunov_estimate(const TargetMixture& mix, std::size_t n, const RngStream& rng,
                                   LyapunovSpace space);

/// Component means and covariances whose convex hulls attract the iteration.
struct ConvexHullSpec {
  std::vector<Vector> means;
  std::vector<SpdMatrix> covs;
  long dim = 0;

  static ConvexHullSpec from_mixture(const TargetMixture& mix);
};

struct HullDistance {
  double d_mu = 0.0;
  double d_sigma = 0.0;
  /// Closest points found: members of the hulls.
  Vector mu_witness;
  Matrix sigma_witness;
  /// d = 1: both distances exact. d > 1: upper bounds.
  bool exact = false;
};

struct HullOptions {
  /// Random admissible {V_j} tried for the covariance hull when d > 1.
  int random_weight_samples = 64;
  std::uint64_t seed = 0x5eed;
};

/// d = 1: distance to [min m_j, max m_j] and [min s_j^2, max s_j^2].
/// d > 1: d_mu is the distance to the ordinary convex hull of the means, and
/// d_sigma (spectral norm) is the best of the scalar-weight projection and
/// random admissible V-combinations. Both are upper bounds of the distances
/// to the matrix-weighted hulls.
HullDistance hull_distance(const ConvexHullSpec& spec, const GaussianParams& state,
                           const HullOptions& options = {});

/// Tracks hull-distance bounds along a trajectory.
///
/// After a step with contraction C toward target (mu_f, Sigma_f) the witnesses
/// are pushed forward as C M + (I - C) mu_f and C S C + S Sigma_f S, which stay
/// in the hulls when 0 < C < I. The reported bound is the better of the pushed
/// witness and a fresh hull_distance, so it never exceeds ||C|| (resp. ||C||^2)
/// times the previous bound.
class HullTracker {
 public:
  HullTracker(ConvexHullSpec spec, const GaussianParams& initial, HullOptions options = {});

  const HullDistance& current() const { return current_; }
  const HullDistance& advance(const GhmcStep& step, const GaussianParams& next);

 private:
  ConvexHullSpec spec_;
  HullOptions options_;
  HullDistance current_;
};

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace ghmc
