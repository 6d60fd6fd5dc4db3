#include "ghmc/ghmc_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghmc/errors.hpp"
#include "ghmc/quadrature.hpp"

namespace ghmc {

namespace {

Matrix sym(const Matrix& m) { return 0.5 * (m + m.transpose()); }

void require_commuting_family(const QuadraticInputs& in) {
  const Matrix* family[] = {&in.f, &in.a, &in.c, &in.s};
  const long d = in.h.dim();
  for (const Matrix* m : family) {
    require_same_dim(m->rows(), d, "quadratic_decomposition");
    require_same_dim(m->cols(), d, "quadratic_decomposition");
  }
  require_same_dim(in.h_tilde.size(), d, "quadratic_decomposition h_tilde");
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!commutes(*family[i], *family[j])) {
        throw NonCommutingError("quadratic_decomposition: F, A, C, S are not pairwise commuting");
      }
    }
  }
  const Matrix unit = in.c * in.c + in.s * in.s - Matrix::Identity(d, d);
  if (unit.cwiseAbs().maxCoeff() > tol::kIdentity) {
    throw IdentityViolationError("quadratic_decomposition: C^2 + S^2 != I");
  }
}

}  // namespace

GhmcStep::GhmcStep(GaussianParams target, GaussianParams auxiliary, double time)
    : target_(std::move(target)),
      auxiliary_(std::move(auxiliary)),
      flow_(flow_matrices(target_.cov(), auxiliary_.cov(), time)) {
  require_same_dim(target_.dim(), auxiliary_.dim(), "GhmcStep target/auxiliary");
}

double GhmcStep::contraction_norm() const { return symmetric_norm(flow_.c); }

GaussianParams ghmc_step(const GhmcStep& step, const GaussianParams& h) {
  require_same_dim(h.dim(), step.dim(), "ghmc_step");
  const Vector& mu_f = step.target().mean();
  const Matrix& sigma_f = step.target().cov().matrix();
  const Matrix& c = step.flow().c;
  const Matrix& s = step.flow().s;

  Vector mean = mu_f + c * (h.mean() - mu_f);
  Matrix cov = sigma_f + c * (h.cov().matrix() - sigma_f) * c;
  const Matrix alt = c * h.cov().matrix() * c + s * sigma_f * s;

  const double scale = std::max(1.0, cov.norm());
  const double gap = (sym(cov) - sym(alt)).norm();
  if (gap > tol::kIdentity * scale) {
    throw IdentityViolationError("ghmc_step: covariance forms disagree by " + std::to_string(gap));
  }
  return GaussianParams(std::move(mean), SpdMatrix(cov));
}

bool IterationTrace::consistent() const {
  return states.size() == chosen.size() + 1 && contraction_mats.size() == chosen.size();
}

IterationTrace iterate_fixed(const GhmcStep& step, const GaussianParams& initial, std::size_t n) {
  IterationTrace trace;
  trace.states.reserve(n + 1);
  trace.states.push_back(initial);
  for (std::size_t k = 0; k < n; ++k) {
    trace.states.push_back(ghmc_step(step, trace.states.back()));
    trace.chosen.push_back(0);
    trace.contraction_mats.push_back(step.flow().c);
  }
  return trace;
}

QuadraticInputs quadratic_inputs(const GhmcStep& step, const GaussianParams& h) {
  require_same_dim(h.dim(), step.dim(), "quadratic_inputs");
  return QuadraticInputs{step.target().cov().apply(MatrixFunction::kInverse),
                         step.flow().a,
                         step.flow().c,
                         step.flow().s,
                         h.cov().inverse(),
                         h.mean() - step.target().mean()};
}

QuadraticDecomposition quadratic_decomposition(const QuadraticInputs& in) {
  require_commuting_family(in);
  const Matrix& f = in.f;
  const Matrix& a = in.a;
  const Matrix& c = in.c;
  const Matrix& s = in.s;
  const Matrix& h = in.h.matrix();
  const long d = in.h.dim();

  const SpdMatrix middle(sym(s * h * s + c * f * c));
  const Matrix middle_inv = middle.apply(MatrixFunction::kInverse);
  const Matrix a_inv = a.partialPivLu().inverse();
  const Matrix f_inv = f.partialPivLu().inverse();
  const Matrix h_inv = in.h.apply(MatrixFunction::kInverse);

  SpdMatrix k(sym(a * middle.matrix() * a));
  const SpdMatrix y_inv(sym(c * h_inv * c + s * f_inv * s));
  SpdMatrix y_mat = y_inv.inverse();
  Matrix x_mat = -a_inv * middle_inv * s * (f - h) * c;
  Vector x = a_inv * middle_inv * s * h * in.h_tilde;
  Vector y = c * in.h_tilde;

  const double zeta = in.h_tilde.dot(h * in.h_tilde) - x.dot(k.matrix() * x) -
                      y.dot(y_mat.matrix() * y);
  const double zeta_tol = 1e-10 * in.h_tilde.squaredNorm() * in.h.max_eigenvalue();
  if (std::abs(zeta) > zeta_tol && d > 0) {
    throw IdentityViolationError("quadratic_decomposition: |zeta| = " +
                                 std::to_string(std::abs(zeta)) + " exceeds " +
                                 std::to_string(zeta_tol));
  }
  return QuadraticDecomposition{std::move(k), std::move(y_mat), std::move(x_mat),
                                std::move(x), std::move(y), zeta, zeta_tol};
}

double quadratic_form_lhs(const QuadraticInputs& in, const Vector& q, const Vector& p) {
  const Vector r1 = in.c * q + in.a * (in.s * p) - in.h_tilde;
  const Vector r2 = in.s * q - in.a * (in.c * p);
  return r1.dot(in.h.matrix() * r1) + r2.dot(in.f * r2);
}

double quadratic_form_rhs(const QuadraticDecomposition& dec, const Vector& q, const Vector& p) {
  const Vector r1 = p + dec.x_mat * q - dec.x;
  const Vector r2 = q - dec.y;
  return r1.dot(dec.k.matrix() * r1) + r2.dot(dec.y_mat.matrix() * r2) + dec.zeta;
}

double determinant_identity_check(const SpdMatrix& k, const SpdMatrix& y, const SpdMatrix& h,
                                  const SpdMatrix& g) {
  require_same_dim(k.dim(), h.dim(), "determinant_identity_check");
  const double log_ratio =
      k.log_determinant() + y.log_determinant() - h.log_determinant() - g.log_determinant();
  return std::abs(std::expm1(log_ratio));
}

std::vector<double> quadrature_oracle_1d(const GhmcStep& step, const GaussianParams& h,
                                         const std::vector<double>& q_grid,
                                         const QuadratureOracleOptions& options) {
  if (step.dim() != 1 || h.dim() != 1) {
    throw DimensionMismatchError("quadrature_oracle_1d: only d = 1 is supported");
  }
  const double mu_f = step.target().mean()(0);
  const double mu_g = step.auxiliary().mean()(0);
  const double var_g = step.auxiliary().cov()(0, 0);
  const double sigma_g = std::sqrt(var_g);
  const double mu_h = h.mean()(0);
  const double var_h = h.cov()(0, 0);
  const double a = step.flow().a(0, 0);
  const double a_inv = step.flow().a_inv(0, 0);
  const double c = step.flow().c(0, 0);
  const double s = step.flow().s(0, 0);

  std::vector<double> out;
  out.reserve(q_grid.size());
  for (double q : q_grid) {
    const double q_tilde = q - mu_f;
    auto integrand = [&](double p) {
      const double p_tilde = p - mu_g;
      const double big_q = mu_f + c * q_tilde + a * s * p_tilde;
      const double big_p = mu_g - a_inv * s * q_tilde + c * p_tilde;
      return normal_pdf(big_q, mu_h, var_h) * normal_pdf(big_p, mu_g, var_g);
    };
    // Both factors are Gaussian in p through Q = .. + a s p_tilde and
    // P = .. + c p_tilde; integrate where each is within halfwidth sds.
    double lo = -HUGE_VAL;
    double hi = HUGE_VAL;
    auto clip = [&](double slope, double offset, double sd) {
      if (std::abs(slope) < 1e-300) return;
      const double centre = -offset / slope;
      const double reach = options.halfwidth * sd / std::abs(slope);
      lo = std::max(lo, centre - reach);
      hi = std::min(hi, centre + reach);
    };
    clip(a * s, mu_f + c * q_tilde - mu_h, std::sqrt(var_h));
    clip(c, -a_inv * s * q_tilde, sigma_g);
    if (!(lo < hi)) {
      out.push_back(0.0);
      continue;
    }
    lo += mu_g;
    hi += mu_g;
    const auto res = adaptive_simpson(integrand, lo, hi, options.abs_tol);
    out.push_back(res.value);
  }
  return out;
}

}  // namespace ghmc
