#include "ghmc/spd.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ghmc/errors.hpp"

namespace ghmc {

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double apply_scalar(MatrixFunction f, double x) {
  switch (f) {
    case MatrixFunction::kInverse:
      return 1.0 / x;
    case MatrixFunction::kSqrt:
      return std::sqrt(x);
    case MatrixFunction::kCos:
      return std::cos(x);
    case MatrixFunction::kSin:
      return std::sin(x);
    case MatrixFunction::kLog:
      return std::log(x);
  }
  return x;
}

Matrix from_eigen(const Matrix& v, const Vector& values) {
  return symmetrized(v * values.asDiagonal() * v.transpose());
}

}  // namespace

SpdMatrix::SpdMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw NotSpdError("SpdMatrix: expected a non-empty square matrix, got " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw NotSpdError("SpdMatrix: non-finite entries");
  const double scale = m.norm();
  const double asym = (m - m.transpose()).norm();
  if (asym > tol::kSymmetry * scale) {
    throw NotSpdError("SpdMatrix: asymmetry " + std::to_string(asym) +
                      " exceeds tolerance");
  }
  entries_ = symmetrized(m);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(entries_);
  if (eig.info() != Eigen::Success) throw NotSpdError("SpdMatrix: eigensolver failed");
  eigenvalues_ = eig.eigenvalues();
  eigenvectors_ = eig.eigenvectors();
  const double lmax = eigenvalues_.maxCoeff();
  const double lmin = eigenvalues_.minCoeff();
  if (!(lmax > 0.0) || !(lmin > tol::kSpdFloor * lmax)) {
    throw NotSpdError("SpdMatrix: eigenvalue " + std::to_string(lmin) +
                      " is not positive (lambda_max = " + std::to_string(lmax) + ")");
  }
}

SpdMatrix::SpdMatrix(Matrix entries, Vector eigenvalues, Matrix eigenvectors)
    : entries_(std::move(entries)),
      eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)) {}

SpdMatrix SpdMatrix::identity(long dim) { return SpdMatrix(Matrix::Identity(dim, dim)); }

SpdMatrix SpdMatrix::diagonal(const Vector& diag) {
  return SpdMatrix(Matrix(diag.asDiagonal()));
}

SpdMatrix SpdMatrix::from_spectrum(const Matrix& basis, const Vector& eigenvalues) {
  if (basis.rows() != basis.cols() || basis.rows() != eigenvalues.size()) {
    throw DimensionMismatchError("from_spectrum: basis/eigenvalue size mismatch");
  }
  if (!is_orthonormal(basis)) {
    throw NotOrthonormalError("from_spectrum: basis is not orthonormal");
  }
  return SpdMatrix(from_eigen(basis, eigenvalues));
}

Matrix SpdMatrix::apply(MatrixFunction f) const {
  Vector values(eigenvalues_.size());
  for (long i = 0; i < values.size(); ++i) values(i) = apply_scalar(f, eigenvalues_(i));
  return from_eigen(eigenvectors_, values);
}

SpdMatrix SpdMatrix::inverse() const {
  Vector inv = eigenvalues_.cwiseInverse();
  return SpdMatrix(from_eigen(eigenvectors_, inv), inv, eigenvectors_);
}

SpdMatrix SpdMatrix::sqrt() const {
  Vector root = eigenvalues_.cwiseSqrt();
  return SpdMatrix(from_eigen(eigenvectors_, root), root, eigenvectors_);
}

Matrix spd_function(const SpdMatrix& m, MatrixFunction f) { return m.apply(f); }

double symmetric_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrized(m), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double commutator_norm(const Matrix& a, const Matrix& b) { return (a * b - b * a).norm(); }

bool commutes(const Matrix& a, const Matrix& b, double rel_tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return commutator_norm(a, b) <= rel_tol * a.norm() * b.norm();
}

bool is_orthonormal(const Matrix& basis, double tol) {
  if (basis.rows() != basis.cols()) return false;
  const Matrix gram = basis.transpose() * basis;
  return (gram - Matrix::Identity(basis.rows(), basis.cols())).cwiseAbs().maxCoeff() <= tol;
}

CommutingFamily::CommutingFamily(Matrix basis, std::vector<Vector> members)
    : basis_(std::move(basis)), members_(std::move(members)) {
  if (!is_orthonormal(basis_)) {
    throw NotOrthonormalError("CommutingFamily: basis is not orthonormal");
  }
  for (const auto& m : members_) {
    require_same_dim(m.size(), basis_.rows(), "CommutingFamily member");
  }
}

SpdMatrix CommutingFamily::member(std::size_t i) const {
  return SpdMatrix::from_spectrum(basis_, members_.at(i));
}

std::pair<SpdMatrix, SpdMatrix> build_commuting_pair(const Matrix& basis,
                                                     const Vector& lambda_f,
                                                     const Vector& lambda_g) {
  CommutingFamily family(basis, {lambda_f, lambda_g});
  return {family.member(0), family.member(1)};
}

FlowMatrices flow_matrices(const SpdMatrix& sigma_f, const SpdMatrix& sigma_g, double t) {
  require_same_dim(sigma_f.dim(), sigma_g.dim(), "flow_matrices");
  if (!std::isfinite(t)) throw Error("flow_matrices: non-finite time");
  if (!commutes(sigma_f.matrix(), sigma_g.matrix())) {
    throw NonCommutingError("flow_matrices: Sigma_f and Sigma_g do not commute (||[.,.]|| = " +
                            std::to_string(commutator_norm(sigma_f.matrix(), sigma_g.matrix())) +
                            ")");
  }
  const Matrix f = sigma_f.apply(MatrixFunction::kInverse);
  const Matrix g = sigma_g.apply(MatrixFunction::kInverse);

  FlowMatrices out;
  out.time = t;

  // D = t sqrt(F G); the frequencies omega_i are the square roots of eig(F G).
  Eigen::SelfAdjointEigenSolver<Matrix> fg(symmetrized(f * g));
  const Vector omega = fg.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  out.angles = t * omega;
  Vector cos_vals(omega.size());
  Vector sin_vals(omega.size());
  for (long i = 0; i < omega.size(); ++i) {
    cos_vals(i) = std::cos(out.angles(i));
    sin_vals(i) = std::sin(out.angles(i));
  }
  out.c = from_eigen(fg.eigenvectors(), cos_vals);
  out.s = from_eigen(fg.eigenvectors(), sin_vals);

  const SpdMatrix a2(symmetrized(sigma_f.matrix() * g));  // F^-1 G
  const SpdMatrix a = a2.sqrt();
  out.a = a.matrix();
  out.a_inv = a.apply(MatrixFunction::kInverse);

  constexpr double half_pi = std::numbers::pi / 2.0;
  out.contraction_in_unit_interval = true;
  for (long i = 0; i < omega.size(); ++i) {
    const double theta = out.angles(i);
    const double nearest = std::round(theta / half_pi) * half_pi;
    if (std::abs(theta - nearest) < tol::kAngleGuard) out.degenerate_angle = true;
    if (!(theta > 0.0 && theta < half_pi)) out.contraction_in_unit_interval = false;
  }
  return out;
}

}  // namespace ghmc
