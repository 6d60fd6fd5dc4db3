#include "ghmc/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghmc/errors.hpp"

namespace ghmc {

UnivariateMixture::UnivariateMixture(std::vector<UnivariateComponent> components, double alpha)
    : components_(std::move(components)), alpha_(alpha) {
  if (components_.empty()) throw Error("UnivariateMixture: no components");
  if (!(alpha_ > 0.0 && alpha_ < 1.0)) throw Error("UnivariateMixture: alpha must lie in (0, 1)");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.prob > 0.0 && c.prob <= 1.0)) throw Error("UnivariateMixture: probability not in (0, 1]");
    if (!(c.variance > 0.0)) throw Error("UnivariateMixture: variance must be positive");
    total += c.prob;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error("UnivariateMixture: probabilities sum to " + std::to_string(total));
  }
}

double UnivariateMixture::mean_m() const {
  double s = 0.0;
  for (const auto& c : components_) s += c.prob * c.mean;
  return s;
}

double UnivariateMixture::mean_s2() const {
  double s = 0.0;
  for (const auto& c : components_) s += c.prob * c.variance;
  return s;
}

double UnivariateMixture::second_moment_m() const {
  double s = 0.0;
  for (const auto& c : components_) s += c.prob * c.mean * c.mean;
  return s;
}

double UnivariateMixture::var_m() const {
  const double m = mean_m();
  double s = 0.0;
  for (const auto& c : components_) s += c.prob * (c.mean - m) * (c.mean - m);
  return s;
}

double UnivariateMixture::max_abs_mean() const {
  double s = 0.0;
  for (const auto& c : components_) s = std::max(s, std::abs(c.mean));
  return s;
}

double UnivariateMixture::max_variance() const {
  double s = 0.0;
  for (const auto& c : components_) s = std::max(s, c.variance);
  return s;
}

double UnivariateMixture::a(std::size_t j) const {
  return (1.0 - alpha_) * std::pow(alpha_, static_cast<double>(j));
}

double UnivariateMixture::b(std::size_t j) const {
  return (1.0 - alpha_ * alpha_) * std::pow(alpha_, 2.0 * static_cast<double>(j));
}

std::size_t UnivariateMixture::draw(RngStream::Engine& engine) const {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double u = uniform(engine) * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                               cumulative_.size() - 1);
}

TargetMixture UnivariateMixture::to_target_mixture(double auxiliary_mean,
                                                   double auxiliary_variance) const {
  std::vector<MixtureComponent> comps;
  for (const auto& c : components_) {
    comps.push_back({c.prob, Vector::Constant(1, c.mean),
                     SpdMatrix(Matrix::Constant(1, 1, c.variance))});
  }
  return TargetMixture(std::move(comps),
                       GaussianParams::univariate(auxiliary_mean, auxiliary_variance),
                       FixedAlpha{alpha_});
}

Complex phi(const UnivariateMixture& mix, double psi, Complex zeta) {
  const Complex i(0.0, 1.0);
  Complex sum = 0.0;
  for (const auto& c : mix.components()) {
    sum += c.prob * std::exp(i * (psi * c.mean + zeta * c.variance));
  }
  return sum;
}

Complex log_phi_factor(const UnivariateMixture& mix, double a, double b, double xi) {
  return std::log(phi(mix, a * xi, Complex(0.0, 0.5 * b * xi * xi)));
}

Complex psi_partial_product(const UnivariateMixture& mix, double psi, Complex zeta,
                            std::size_t terms) {
  Complex prod = 1.0;
  for (std::size_t j = 0; j < terms; ++j) prod *= phi(mix, mix.a(j) * psi, mix.b(j) * zeta);
  return prod;
}

PsiValue psi_limit(const UnivariateMixture& mix, double psi, Complex zeta, double tol) {
  if (!(tol > 0.0)) throw Error("psi_limit: tol must be positive");
  const double alpha = mix.alpha();
  const double mean_scale = std::abs(psi) * mix.max_abs_mean();
  const double var_scale = std::abs(zeta) * mix.max_variance();
  constexpr std::size_t kMaxTerms = 100000;

  PsiValue out;
  out.value = 1.0;
  for (std::size_t j = 0;; ++j) {
    const double aj = std::pow(alpha, static_cast<double>(j));
    // |Phi_j - 1| <= a_j |psi| max|m| + b_j |zeta| max s^2 when Im zeta >= 0,
    // and the a_j, b_j tails from j on sum to alpha^j, alpha^2j.
    const double tail = aj * mean_scale + aj * aj * var_scale;
    if (std::expm1(tail) < tol || j >= kMaxTerms) {
      out.terms = j;
      out.tail_bound = tail;
      return out;
    }
    out.value *= phi(mix, mix.a(j) * psi, mix.b(j) * zeta);
  }
}

LimitMoments limit_moments(const UnivariateMixture& mix) {
  const double alpha = mix.alpha();
  const double ratio = (1.0 - alpha) / (1.0 + alpha);
  const double m = mix.mean_m();
  const double variance = mix.mean_s2() + ratio * mix.var_m();
  return {m, m * m + mix.mean_s2() + ratio * (mix.second_moment_m() - m * m), variance};
}

TransientMoments transient_moments(const UnivariateMixture& mix, double mu0, double sigma0_sq,
                                   std::size_t k) {
  const double ak = std::pow(mix.alpha(), static_cast<double>(k));
  return {ak * mu0 + (1.0 - ak) * mix.mean_m(), ak * ak * sigma0_sq + (1.0 - ak * ak) * mix.mean_s2()};
}

std::pair<double, double> iterate_univariate(const UnivariateMixture& mix, double mu0,
                                             double sigma0_sq, std::size_t k,
                                             RngStream::Engine& engine) {
  const double alpha = mix.alpha();
  const double alpha2 = alpha * alpha;
  double mu = mu0;
  double s2 = sigma0_sq;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& c = mix.components()[mix.draw(engine)];
    mu = alpha * mu + (1.0 - alpha) * c.mean;
    s2 = alpha2 * s2 + (1.0 - alpha2) * c.variance;
  }
  return {mu, s2};
}

std::size_t default_truncation(const UnivariateMixture& mix) {
  const double m = mix.max_abs_mean();
  const double s = mix.max_variance();
  std::size_t j = 0;
  double aj = 1.0;
  while (aj * m + aj * aj * s >= 1e-12) {
    ++j;
    aj *= mix.alpha();
  }
  return j;
}

namespace {

template <typename Replica>
SampleBatch scalar_batch(long n, const RngStream& rng, const char* source, Replica replica) {
  if (n < 1) throw Error(std::string(source) + ": n must be >= 1");
  SampleBatch batch{Matrix(n, 1), source, rng.seed()};
  const auto chunks = static_cast<std::size_t>((n + kSampleChunkRows - 1) / kSampleChunkRows);
  parallel_chunks(chunks, [&](std::size_t chunk) {
    const long begin = static_cast<long>(chunk) * kSampleChunkRows;
    const long rows = std::min(kSampleChunkRows, n - begin);
    auto engine = rng.split(chunk).engine();
    std::normal_distribution<double> normal(0.0, 1.0);
    for (long r = 0; r < rows; ++r) {
      const auto [mu, s2] = replica(engine);
      batch.draws(begin + r, 0) = mu + std::sqrt(s2) * normal(engine);
    }
  });
  if (!batch.draws.allFinite()) throw Error(std::string(source) + ": non-finite draws");
  return batch;
}

}  // namespace

SampleBatch sample_x_infty(const UnivariateMixture& mix, long n, std::size_t truncation,
                           const RngStream& rng) {
  const double aj = std::pow(mix.alpha(), static_cast<double>(truncation));
  if (!(aj * mix.max_abs_mean() + aj * aj * mix.max_variance() < 1e-12)) {
    throw Error("sample_x_infty: truncation " + std::to_string(truncation) +
                " leaves a bias above 1e-12");
  }
  std::vector<double> a(truncation), b(truncation);
  for (std::size_t j = 0; j < truncation; ++j) {
    a[j] = mix.a(j);
    b[j] = mix.b(j);
  }
  return scalar_batch(n, rng, "x_infty", [&](RngStream::Engine& engine) {
    double mu = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < truncation; ++j) {
      const auto& c = mix.components()[mix.draw(engine)];
      mu += a[j] * c.mean;
      s2 += b[j] * c.variance;
    }
    return std::pair{mu, s2};
  });
}

SampleBatch sample_chain_output(const UnivariateMixture& mix, double mu0, double sigma0_sq,
                                std::size_t k, long n, const RngStream& rng) {
  return scalar_batch(n, rng, "chain_output", [&](RngStream::Engine& engine) {
    return iterate_univariate(mix, mu0, sigma0_sq, k, engine);
  });
}

EmpiricalCf empirical_cf(const Vector& samples, double xi) {
  const long n = samples.size();
  if (n < 2) throw Error("empirical_cf: need at least two samples");
  double sc = 0.0, ss = 0.0;
  for (long i = 0; i < n; ++i) {
    sc += std::cos(xi * samples(i));
    ss += std::sin(xi * samples(i));
  }
  const double nd = static_cast<double>(n);
  const double u = sc / nd, v = ss / nd;
  double vc = 0.0, vs = 0.0, cv = 0.0;
  for (long i = 0; i < n; ++i) {
    const double dc = std::cos(xi * samples(i)) - u;
    const double ds = std::sin(xi * samples(i)) - v;
    vc += dc * dc;
    vs += ds * ds;
    cv += dc * ds;
  }
  vc /= nd - 1.0;
  vs /= nd - 1.0;
  cv /= nd - 1.0;

  EmpiricalCf out;
  out.value = Complex(u, v);
  out.se_real = std::sqrt(vc / nd);
  out.se_imag = std::sqrt(vs / nd);
  const double r = std::hypot(u, v);
  out.se_modulus = std::sqrt(std::max(0.0, u * u * vc + v * v * vs + 2.0 * u * v * cv) / nd) / r;
  out.se_argument =
      std::sqrt(std::max(0.0, v * v * vc + u * u * vs - 2.0 * u * v * cv) / nd) / (r * r);
  return out;
}

double n_h(double m, double sigma) {
  const double a = std::abs(m);
  const double c = std::abs(2.0 * sigma);
  if (c == 0.0) return a;
  if (a == 0.0) return 0.5 * c;
  // integral_0^1 sqrt(a^2 + c^2 w^2) dw
  return 0.5 * std::hypot(a, c) + a * a / (2.0 * c) * std::asinh(c / a);
}

double d_h(const HalfPlanePoint& p0, const HalfPlanePoint& p1) {
  return n_h(p1.mu - p0.mu, p1.sigma - p0.sigma);
}

double r_function(double mu, double sigma) { return std::sqrt(mu * mu + std::abs(sigma)); }

double d_r(const HalfPlanePoint& p0, const HalfPlanePoint& p1) {
  return r_function(p0.mu - p1.mu, p0.sigma - p1.sigma);
}

HalfPlanePoint geodesic(const HalfPlanePoint& p0, const HalfPlanePoint& target, double c, double t) {
  if (!(c > 0.0 && c < 1.0)) throw Error("geodesic: C must lie in (0, 1)");
  if (!(t >= 0.0)) throw Error("geodesic: t must be non-negative");
  const double ct = std::pow(c, t);
  const double c2t = ct * ct;
  return {ct * p0.mu + (1.0 - ct) * target.mu, c2t * p0.sigma + (1.0 - c2t) * target.sigma};
}

HalfPlanePoint half_plane_step(const HalfPlanePoint& p, const HalfPlanePoint& target, double c) {
  return {(1.0 - c) * target.mu + c * p.mu, (1.0 - c * c) * target.sigma + c * c * p.sigma};
}

}  // namespace ghmc
