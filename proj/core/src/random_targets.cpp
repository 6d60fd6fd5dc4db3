#include "ghmc/random_targets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ghmc/convex.hpp"
#include "ghmc/errors.hpp"

namespace ghmc {

namespace {

double time_for_component(const TimeRule& rule, const MixtureComponent& comp,
                          const GaussianParams& auxiliary) {
  if (const auto* fixed = std::get_if<FixedTime>(&rule)) return fixed->t;
  const double alpha = std::get<FixedAlpha>(rule).alpha;
  return std::sqrt(comp.cov(0, 0)) * std::sqrt(auxiliary.cov()(0, 0)) * std::acos(alpha);
}

void require_commutes_with_mixture(const TargetMixture& mix, const SpdMatrix& cov,
                                   const char* what) {
  if (!commutes(cov.matrix(), mix.auxiliary().cov().matrix())) {
    throw NonCommutingError(std::string(what) + ": covariance does not commute with the auxiliary");
  }
  for (const auto& comp : mix.components()) {
    if (!commutes(cov.matrix(), comp.cov.matrix())) {
      throw NonCommutingError(std::string(what) +
                              ": covariance does not commute with a mixture component");
    }
  }
}

}  // namespace

TargetMixture::TargetMixture(std::vector<MixtureComponent> components, GaussianParams auxiliary,
                             TimeRule time_rule)
    : components_(std::move(components)),
      auxiliary_(std::move(auxiliary)),
      time_rule_(time_rule) {
  if (components_.empty()) throw Error("TargetMixture: no components");
  if (const auto* fa = std::get_if<FixedAlpha>(&time_rule_)) {
    if (auxiliary_.dim() != 1) throw Error("TargetMixture: FixedAlpha requires d = 1");
    if (!(fa->alpha > 0.0 && fa->alpha < 1.0)) {
      throw Error("TargetMixture: FixedAlpha requires alpha in (0, 1)");
    }
  }
  double total = 0.0;
  for (const auto& comp : components_) {
    if (!(comp.prob > 0.0 && comp.prob <= 1.0)) {
      throw Error("TargetMixture: probability " + std::to_string(comp.prob) + " not in (0, 1]");
    }
    require_same_dim(comp.mean.size(), auxiliary_.dim(), "TargetMixture component mean");
    require_same_dim(comp.cov.dim(), auxiliary_.dim(), "TargetMixture component cov");
    total += comp.prob;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error("TargetMixture: probabilities sum to " + std::to_string(total));
  }
  steps_.reserve(components_.size());
  for (const auto& comp : components_) {
    // GhmcStep throws NonCommutingError for a component that does not commute
    // with the auxiliary.
    steps_.emplace_back(GaussianParams(comp.mean, comp.cov), auxiliary_,
                        time_for_component(time_rule_, comp, auxiliary_));
  }
}

std::size_t TargetMixture::draw(RngStream::Engine& engine) const {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double u = uniform(engine) * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                               cumulative_.size() - 1);
}

double TargetMixture::contraction_norm() const {
  double sup = 0.0;
  for (const auto& step : steps_) sup = std::max(sup, step.contraction_norm());
  return sup;
}

IterationTrace iterate_random(const TargetMixture& mix, const GaussianParams& initial,
                              std::size_t k, const RngStream& rng) {
  require_same_dim(initial.dim(), mix.dim(), "iterate_random");
  require_commutes_with_mixture(mix, initial.cov(), "iterate_random initial state");
  auto engine = rng.engine();
  IterationTrace trace;
  trace.states.reserve(k + 1);
  trace.states.push_back(initial);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = mix.draw(engine);
    trace.states.push_back(ghmc_step(mix.step(j), trace.states.back()));
    trace.chosen.push_back(j);
    trace.contraction_mats.push_back(mix.step(j).flow().c);
  }
  return trace;
}

Vector vectorize(const Matrix& m) {
  Vector v(m.size());
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

Matrix unvectorize(const Vector& v, long dim) {
  require_same_dim(v.size(), dim * dim, "unvectorize");
  Matrix m(dim, dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) m(i, j) = v(i * dim + j);
  }
  return m;
}

AffineCoefficients affine_coefficients(const TargetMixture& mix, std::size_t component) {
  const auto& comp = mix.components().at(component);
  const Matrix& c = mix.step(component).flow().c;
  const long d = mix.dim();
  AffineCoefficients out;
  out.a_mu = c;
  out.b_mu = (Matrix::Identity(d, d) - c) * comp.mean;
  out.a_sigma.resize(d * d, d * d);
  for (long j = 0; j < d; ++j) {
    for (long l = 0; l < d; ++l) {
      for (long m = 0; m < d; ++m) {
        for (long n = 0; n < d; ++n) out.a_sigma(j * d + l, m * d + n) = c(m, j) * c(n, l);
      }
    }
  }
  const Matrix& s2 = comp.cov.matrix();
  out.b_sigma = vectorize(s2 - c.transpose() * s2 * c);
  return out;
}

GaussianParams apply_affine(const AffineCoefficients& coeffs, const GaussianParams& state) {
  require_same_dim(coeffs.a_mu.cols(), state.dim(), "apply_affine");
  const Vector mean = coeffs.a_mu * state.mean() + coeffs.b_mu;
  const Vector sigma = coeffs.a_sigma * vectorize(state.cov().matrix()) + coeffs.b_sigma;
  return GaussianParams(mean, SpdMatrix(unvectorize(sigma, state.dim())));
}

LyapunovEstimate lyapunov_estimate(const TargetMixture& mix, std::size_t n, const RngStream& rng,
                                   LyapunovSpace space) {
  if (n < 1) throw Error("lyapunov_estimate: n must be >= 1");
  std::vector<Matrix> multipliers;
  multipliers.reserve(mix.size());
  for (std::size_t j = 0; j < mix.size(); ++j) {
    if (space == LyapunovSpace::kMean) {
      multipliers.push_back(mix.step(j).flow().c);
    } else {
      multipliers.push_back(affine_coefficients(mix, j).a_sigma);
    }
  }

  LyapunovEstimate est;
  est.factors = n;
  for (std::size_t j = 0; j < mix.size(); ++j) {
    const double log_norm = std::log(operator_norm(multipliers[j]));
    est.mean_log_norm += mix.components()[j].prob * log_norm;
    est.log_plus_moment += mix.components()[j].prob * std::max(0.0, log_norm);
  }

  constexpr std::size_t kRescaleEvery = 32;
  auto engine = rng.engine();
  const long m = multipliers.front().rows();
  Matrix product = Matrix::Identity(m, m);
  double log_scale = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    product = multipliers[mix.draw(engine)] * product;
    if (i % kRescaleEvery == 0) {
      const double s = product.norm();
      if (s == 0.0) {
        est.exponent = -std::numeric_limits<double>::infinity();
        return est;
      }
      log_scale += std::log(s);
      product /= s;
    }
  }
  est.exponent = (log_scale + std::log(operator_norm(product))) / static_cast<double>(n);
  return est;
}

ConvexHullSpec ConvexHullSpec::from_mixture(const TargetMixture& mix) {
  ConvexHullSpec spec;
  spec.dim = mix.dim();
  for (const auto& comp : mix.components()) {
    spec.means.push_back(comp.mean);
    spec.covs.push_back(comp.cov);
  }
  return spec;
}

namespace {

double interval_distance(double x, double lo, double hi, double* witness) {
  *witness = std::clamp(x, lo, hi);
  return std::abs(x - *witness);
}

}  // namespace

HullDistance hull_distance(const ConvexHullSpec& spec, const GaussianParams& state,
                           const HullOptions& options) {
  if (spec.means.empty() || spec.covs.empty()) throw Error("hull_distance: empty hull");
  require_same_dim(state.dim(), spec.dim, "hull_distance");
  const long d = spec.dim;
  HullDistance out;

  if (d == 1) {
    double mlo = spec.means.front()(0), mhi = mlo;
    for (const auto& m : spec.means) {
      mlo = std::min(mlo, m(0));
      mhi = std::max(mhi, m(0));
    }
    double slo = spec.covs.front()(0, 0), shi = slo;
    for (const auto& s : spec.covs) {
      slo = std::min(slo, s(0, 0));
      shi = std::max(shi, s(0, 0));
    }
    double mw = 0.0, sw = 0.0;
    out.d_mu = interval_distance(state.mean()(0), mlo, mhi, &mw);
    out.d_sigma = interval_distance(state.cov()(0, 0), slo, shi, &sw);
    out.mu_witness = Vector::Constant(1, mw);
    out.sigma_witness = Matrix::Constant(1, 1, sw);
    out.exact = true;
    return out;
  }

  Matrix mean_points(d, static_cast<long>(spec.means.size()));
  for (std::size_t j = 0; j < spec.means.size(); ++j) mean_points.col(static_cast<long>(j)) = spec.means[j];
  const HullProjection mu_proj = project_onto_hull(mean_points, state.mean());
  out.d_mu = mu_proj.distance;
  out.mu_witness = mu_proj.point;

  const long jn = static_cast<long>(spec.covs.size());
  Matrix cov_points(d * d, jn);
  for (long j = 0; j < jn; ++j) cov_points.col(j) = vectorize(spec.covs[static_cast<std::size_t>(j)].matrix());
  const Matrix& sigma = state.cov().matrix();
  const HullProjection sig_proj = project_onto_hull(cov_points, vectorize(sigma));
  Matrix best = unvectorize(sig_proj.point, d);
  best = 0.5 * (best + best.transpose());
  double best_dist = symmetric_norm(sigma - best);

  RngStream::Engine engine = RngStream(options.seed).engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int sample = 0; sample < options.random_weight_samples; ++sample) {
    std::vector<Matrix> w(static_cast<std::size_t>(jn), Matrix(d, d));
    Matrix gram = Matrix::Zero(d, d);
    for (auto& wj : w) {
      for (long r = 0; r < d; ++r) {
        for (long c = 0; c < d; ++c) wj(r, c) = normal(engine);
      }
      gram += wj.transpose() * wj;
    }
    const Matrix gram_inv_sqrt = SpdMatrix(gram).inverse().sqrt().matrix();
    Matrix candidate = Matrix::Zero(d, d);
    for (long j = 0; j < jn; ++j) {
      const Matrix v = w[static_cast<std::size_t>(j)] * gram_inv_sqrt;
      candidate += v.transpose() * spec.covs[static_cast<std::size_t>(j)].matrix() * v;
    }
    candidate = 0.5 * (candidate + candidate.transpose());
    const double dist = symmetric_norm(sigma - candidate);
    if (dist < best_dist) {
      best_dist = dist;
      best = candidate;
    }
  }
  out.d_sigma = best_dist;
  out.sigma_witness = best;
  out.exact = false;
  return out;
}

HullTracker::HullTracker(ConvexHullSpec spec, const GaussianParams& initial, HullOptions options)
    : spec_(std::move(spec)), options_(options), current_(hull_distance(spec_, initial, options_)) {}

const HullDistance& HullTracker::advance(const GhmcStep& step, const GaussianParams& next) {
  HullDistance fresh = hull_distance(spec_, next, options_);
  if (!fresh.exact && step.contraction_positive()) {
    const Matrix& c = step.flow().c;
    const Matrix& s = step.flow().s;
    const long d = spec_.dim;
    const Vector pushed_mu =
        c * current_.mu_witness + (Matrix::Identity(d, d) - c) * step.target().mean();
    Matrix pushed_sigma =
        c * current_.sigma_witness * c + s * step.target().cov().matrix() * s;
    pushed_sigma = 0.5 * (pushed_sigma + pushed_sigma.transpose());
    const double dmu = (next.mean() - pushed_mu).norm();
    const double dsig = symmetric_norm(next.cov().matrix() - pushed_sigma);
    if (dmu < fresh.d_mu) {
      fresh.d_mu = dmu;
      fresh.mu_witness = pushed_mu;
    }
    if (dsig < fresh.d_sigma) {
      fresh.d_sigma = dsig;
      fresh.sigma_witness = pushed_sigma;
    }
  }
  current_ = std::move(fresh);
  return current_;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

}  // namespace ghmc
