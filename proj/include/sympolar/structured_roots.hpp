#pragma once

#include <utility>

#include "sympolar/core.hpp"
#include "sympolar/matrix_functions.hpp"

namespace sympolar {

/// Symplectic similarity bringing an eigen-generic skew-Hamiltonian matrix
/// to block-diagonal form: S^{-1} Y S = diag(N, N^T) with S symplectic and
/// N of size n x n carrying one copy of each eigenvalue pair (complex pairs
/// realified into 2x2 rotation-like blocks).
struct SymplecticBlockDiagonalization {
  Matrix s;
  Matrix n;
};

/// Requires Y skew-Hamiltonian, nondegenerate and eigen-generic: every
/// eigenvalue with algebraic and geometric multiplicity exactly 2.  Inputs
/// outside that class fail with DefectiveEigenstructure; no Jordan-chain
/// handling is attempted.
SymplecticBlockDiagonalization symplectic_block_diagonalize(
    const Matrix& y, const TolerancePolicy& tol = {});

/// Factors a nonderogatory real square matrix as N = P Q with P and Q
/// symmetric.  Krylov basis reduction to companion form, then the classical
/// companion = (symmetric) x (Hankel)^{-1} splitting.  Seeds are tried in a
/// fixed order (canonical basis vectors, then a seeded pseudorandom batch);
/// the first full-rank basis wins.
std::pair<Matrix, Matrix> symmetric_pair_factorization(
    const Matrix& n, const TolerancePolicy& tol = {});

/// Hamiltonian square root of a nondegenerate eigen-generic skew-Hamiltonian
/// matrix: H with (J H)^T = J H and H^2 = Y.  Exists for any such Y,
/// including spectra with negative real eigenvalues where no principal root
/// exists.
Matrix hamiltonian_sqrt(const Matrix& y, const TolerancePolicy& tol = {});

struct SkewHamiltonianSqrtOptions {
  /// When set, replace M by its skew-Hamiltonian part (M - J M^T J) / 2 if
  /// that strictly reduces the structure residual without worsening
  /// |M^2 - Y| beyond a factor of two.
  bool project_structure = false;
};

/// Principal square root specialized to skew-Hamiltonian input.  The result
/// is again skew-Hamiltonian (a primary root is a polynomial in Y).
Matrix skew_hamiltonian_principal_sqrt(
    const Matrix& y, const TolerancePolicy& tol = {},
    const SkewHamiltonianSqrtOptions& options = {});

}  // namespace sympolar
