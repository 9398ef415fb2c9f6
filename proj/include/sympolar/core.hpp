#pragma once

#include "sympolar/errors.hpp"
#include "sympolar/types.hpp"

namespace sympolar {

/// Mode count n of a 2n x 2n matrix.  Throws InvalidDimension unless the
/// matrix is square with even, positive dimension and all entries finite.
Index mode_count(const Matrix& m);

/// The symplectic form J = [[0, -I_n], [I_n, 0]].  J^2 = -I, J^T = -J,
/// det J = 1.
Matrix symplectic_form(Index n);

/// The signature matrix D = diag(I_n, -I_n).  D^2 = I and D J D = -J, so D
/// is anti-symplectic.
Matrix signature_matrix(Index n);

/// The block swap Z = [[0, -I_n], [-I_n, 0]].  Z^2 = I, Z J Z^T = -J and
/// J Z = D.
Matrix swap_matrix(Index n);

/// Defining residual matrix of the given structure class evaluated at x.
Matrix structure_residual_matrix(const Matrix& x, StructureKind kind);

/// Residual-based structure test.  Pure query: returns the Frobenius norm of
/// the defining residual and whether it is within tol's scaled threshold.
StructureCheck check_structure(const Matrix& x, StructureKind kind,
                               const TolerancePolicy& tol = {});

/// Y = -X J X^T J.  Always skew-Hamiltonian; det Y = (det X)^2.
Matrix associated_skew_hamiltonian(const Matrix& x);

/// Y' = -X^T J X J, the transposed-side variant.  Equals
/// associated_skew_hamiltonian(X^T).
Matrix associated_skew_hamiltonian_left(const Matrix& x);

/// Determinant via pivoted LU; sign from the pivot permutation parity.
double determinant(const Matrix& m);

/// Scale-invariant rank decision: true when the smallest singular value is
/// at most rel_tol times the largest.
bool is_degenerate(const Matrix& m, const TolerancePolicy& tol = {});

}  // namespace sympolar
