#pragma once

#include <stdexcept>
#include <string>

namespace ghmc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix failed the symmetry or positive-definiteness test.
class NotSpdError : public Error {
 public:
  using Error::Error;
};

/// Basis handed to build_commuting_pair is not orthonormal.
class NotOrthonormalError : public Error {
 public:
  using Error::Error;
};

/// Covariances (or a commuting family) failed the commutator check.
class NonCommutingError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its depth limit before reaching tolerance.
class QuadratureNotConvergedError : public Error {
 public:
  using Error::Error;
};

/// An algebraic identity that must hold exactly (up to rounding) was violated.
class IdentityViolationError : public Error {
 public:
  using Error::Error;
};

inline void require_same_dim(long a, long b, const std::string& what) {
  if (a != b) {
    throw DimensionMismatchError(what + ": dimension " + std::to_string(a) +
                                 " vs " + std::to_string(b));
  }
}

}  // namespace ghmc
