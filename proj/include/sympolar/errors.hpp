#pragma once

#include <stdexcept>
#include <string>

namespace sympolar {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Matrix is not square, not even-dimensional, or a size argument is zero.
struct InvalidDimension : Error {
  using Error::Error;
};

/// Two operands that must share a dimension do not.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// An iterative reduction failed to settle within its iteration budget.
struct NonConvergence : Error {
  using Error::Error;
};

/// An eigenvalue of the input does not have the two-dimensional eigenspace
/// the symplectic pairing construction requires, or the pairing is
/// numerically singular.
struct DefectiveEigenstructure : Error {
  using Error::Error;
};

/// No Krylov seed produced a full-rank basis: the minimal polynomial of the
/// input is smaller than its characteristic polynomial.
struct DerogatoryInput : Error {
  using Error::Error;
};

/// A channel's alpha matrix fails the symmetry check.
struct AsymmetricAlpha : Error {
  using Error::Error;
};

enum class FailedPrecondition {
  Degenerate,
  SpectrumSign,
  NotSkewHamiltonian,
  NotPositiveDefinite,
  CaseInadmissible,
};

const char* to_string(FailedPrecondition reason);

/// An operation's documented precondition does not hold for the given input.
struct PreconditionViolated : Error {
  FailedPrecondition reason;

  PreconditionViolated(FailedPrecondition r, const std::string& message)
      : Error(std::string(to_string(r)) + ": " + message), reason(r) {}
};

}  // namespace sympolar
