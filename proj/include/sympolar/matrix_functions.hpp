#pragma once

#include <vector>

#include "sympolar/errors.hpp"
#include "sympolar/types.hpp"

namespace sympolar {

/// Real Schur factorization A = Q T Q^T with Q orthogonal and T real
/// quasi-upper-triangular (1x1 and 2x2 diagonal blocks; every 2x2 block
/// carries a complex-conjugate eigenvalue pair).
struct RealSchurForm {
  Matrix q;
  Matrix t;
};

/// Iteration budget is 30 sweeps per matrix row; exceeding it throws
/// NonConvergence.
RealSchurForm real_schur(const Matrix& a);

/// Eigenvalues read off the quasi-triangular factor, in diagonal order.
std::vector<Complex> schur_eigenvalues(const RealSchurForm& schur);

/// Sign summary of the real part of a spectrum.  An eigenvalue counts as
/// real when |Im| <= imag_tol * (1 + spectral_radius), and as zero when
/// additionally |Re| is below the same threshold.
struct EigenClassification {
  bool has_zero = false;
  bool has_negative_real = false;
  bool has_positive_real = false;
  std::vector<double> real_eigenvalues;  // ascending
  double spectral_radius = 0.0;
};

EigenClassification classify_eigenvalues(const std::vector<Complex>& eigenvalues,
                                         const TolerancePolicy& tol = {});

EigenClassification classify_real_eigenvalues(const Matrix& a,
                                              const TolerancePolicy& tol = {});

/// Principal square root of a real matrix with no zero or negative real
/// eigenvalues: the unique real root whose spectrum lies in the open right
/// half-plane.  Schur method: square roots of the diagonal blocks in closed
/// form, off-diagonal blocks by back-substitution through small
/// Sylvester-type solves.  The result is a polynomial in the input, so it
/// commutes with it and inherits any similarity structure.
Matrix principal_sqrt_real(const Matrix& a, const TolerancePolicy& tol = {});

}  // namespace sympolar
