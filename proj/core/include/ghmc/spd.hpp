#pragma once

// Symmetric positive definite matrices and their spectral matrix functions.
//
// Every matrix function used by the GHMC moment map (inverse, square root,
// cosine, sine, log) is evaluated through a cached symmetric eigensolve,
// f(M) = V diag(f(lambda)) V^T.

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace ghmc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

namespace tol {
inline constexpr double kSymmetry = 1e-12;   // relative to ||M||
inline constexpr double kSpdFloor = 1e-12;   // relative to lambda_max
inline constexpr double kCommute = 1e-10;    // relative to ||M1|| ||M2||
inline constexpr double kIdentity = 1e-10;
inline constexpr double kOrtho = 1e-10;
inline constexpr double kRecon = 1e-12;      // relative to ||M||
inline constexpr double kAngleGuard = 1e-8;
}  // namespace tol

enum class MatrixFunction { kInverse, kSqrt, kCos, kSin, kLog };

/// Immutable SPD matrix with cached spectral decomposition.
///
/// Construction symmetrizes the input exactly ((M + M^T) / 2) after checking
/// that the asymmetry is within tol::kSymmetry, and rejects any matrix whose
/// smallest eigenvalue is not above tol::kSpdFloor * lambda_max.
class SpdMatrix {
 public:
  explicit SpdMatrix(const Matrix& m);

  static SpdMatrix identity(long dim);
  static SpdMatrix diagonal(const Vector& diag);
  /// V diag(lambda) V^T; V must be orthonormal within tol::kOrtho.
  static SpdMatrix from_spectrum(const Matrix& basis, const Vector& eigenvalues);

  long dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

  double operator()(long i, long j) const { return entries_(i, j); }

  double max_eigenvalue() const { return eigenvalues_.maxCoeff(); }
  double min_eigenvalue() const { return eigenvalues_.minCoeff(); }
  double determinant() const { return eigenvalues_.prod(); }
  double log_determinant() const { return eigenvalues_.array().log().sum(); }
  double condition_number() const { return max_eigenvalue() / min_eigenvalue(); }

  /// V diag(f(lambda)) V^T, symmetrized.
  Matrix apply(MatrixFunction f) const;
  SpdMatrix inverse() const;
  SpdMatrix sqrt() const;

 private:
  SpdMatrix(Matrix entries, Vector eigenvalues, Matrix eigenvectors);

  Matrix entries_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

/// f(M) through the cached spectrum; result symmetric, SPD for inverse/sqrt.
Matrix spd_function(const SpdMatrix& m, MatrixFunction f);

/// Spectral norm of a symmetric matrix.
double symmetric_norm(const Matrix& m);

/// Operator 2-norm of a general square matrix.
double operator_norm(const Matrix& m);

/// ||M1 M2 - M2 M1||_F.
double commutator_norm(const Matrix& a, const Matrix& b);

/// ||M1 M2 - M2 M1|| <= tol::kCommute * ||M1|| * ||M2|| (Frobenius norms).
bool commutes(const Matrix& a, const Matrix& b, double rel_tol = tol::kCommute);

/// ||V^T V - I||_max <= tol.
bool is_orthonormal(const Matrix& basis, double tol = tol::kOrtho);

/// Several SPD matrices sharing one orthonormal eigenbasis.
class CommutingFamily {
 public:
  CommutingFamily(Matrix basis, std::vector<Vector> members);

  const Matrix& basis() const { return basis_; }
  const std::vector<Vector>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  SpdMatrix member(std::size_t i) const;

 private:
  Matrix basis_;
  std::vector<Vector> members_;
};

/// (Sigma_f, Sigma_g) with a shared eigenbasis. Throws NotOrthonormalError or
/// NotSpdError.
std::pair<SpdMatrix, SpdMatrix> build_commuting_pair(const Matrix& basis,
                                                     const Vector& lambda_f,
                                                     const Vector& lambda_g);

/// The matrices of one exact Hamiltonian flow of duration t.
///
/// With F = Sigma_f^-1 and G = Sigma_g^-1: A = sqrt(F^-1 G),
/// D = t sqrt(F G) (= F A t), C = cos(D), S = sin(D).
struct FlowMatrices {
  Matrix a;
  Matrix a_inv;
  Matrix c;
  Matrix s;
  /// Eigenvalues of D, i.e. the rotation angles t * omega_i.
  Vector angles;
  double time = 0.0;
  /// Some angle lies within tol::kAngleGuard of a multiple of pi/2, so C or S
  /// is (nearly) singular.
  bool degenerate_angle = false;
  /// 0 < C < I holds (all angles strictly inside (0, pi/2)).
  bool contraction_in_unit_interval = false;
};

/// Throws NonCommutingError if Sigma_f and Sigma_g fail the commutator test.
/// Negative t is allowed and flips the sign of S.
FlowMatrices flow_matrices(const SpdMatrix& sigma_f, const SpdMatrix& sigma_g, double t);

}  // namespace ghmc
