#pragma once

#include <Eigen/Dense>
#include <complex>

namespace sympolar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Residual thresholds shared across the library.
///
/// Structure residuals are quadratic in the input, so a residual r computed
/// from an input X is accepted when r <= rel_tol * (1 + |X|_F^2).  imag_tol
/// decides when an eigenvalue counts as real (scaled by the spectral radius).
struct TolerancePolicy {
  double rel_tol = 1e-9;
  double imag_tol = 1e-9;

  [[nodiscard]] bool accepts(double residual, double input_norm) const {
    return residual <= rel_tol * (1.0 + input_norm * input_norm);
  }
};

/// Matrix structure classes, each with a defining residual matrix:
/// Symplectic S J S^T - J, AntiSymplectic T J T^T + J, Hamiltonian
/// (J H)^T - J H, SkewHamiltonian (J M)^T + J M, Symmetric X^T - X,
/// SkewSymmetric X^T + X.
enum class StructureKind {
  Symplectic,
  AntiSymplectic,
  Hamiltonian,
  SkewHamiltonian,
  Symmetric,
  SkewSymmetric,
};

const char* to_string(StructureKind kind);

struct StructureCheck {
  bool holds = false;
  double residual = 0.0;  // Frobenius norm of the defining residual matrix
};

}  // namespace sympolar
