#include "sympolar/core.hpp"

#include <Eigen/SVD>

namespace sympolar {

const char* to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::Symplectic: return "symplectic";
    case StructureKind::AntiSymplectic: return "anti-symplectic";
    case StructureKind::Hamiltonian: return "hamiltonian";
    case StructureKind::SkewHamiltonian: return "skew-hamiltonian";
    case StructureKind::Symmetric: return "symmetric";
    case StructureKind::SkewSymmetric: return "skew-symmetric";
  }
  return "unknown";
}

const char* to_string(FailedPrecondition reason) {
  switch (reason) {
    case FailedPrecondition::Degenerate: return "Degenerate";
    case FailedPrecondition::SpectrumSign: return "SpectrumSign";
    case FailedPrecondition::NotSkewHamiltonian: return "NotSkewHamiltonian";
    case FailedPrecondition::NotPositiveDefinite: return "NotPositiveDefinite";
    case FailedPrecondition::CaseInadmissible: return "CaseInadmissible";
  }
  return "Unknown";
}

Index mode_count(const Matrix& m) {
  if (m.rows() != m.cols())
    throw InvalidDimension("matrix must be square, got " +
                           std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()));
  if (m.rows() == 0 || m.rows() % 2 != 0)
    throw InvalidDimension("matrix dimension must be even and positive, got " +
                           std::to_string(m.rows()));
  if (!m.allFinite())
    throw InvalidDimension("matrix entries must be finite");
  return m.rows() / 2;
}

Matrix symplectic_form(Index n) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return j;
}

Matrix signature_matrix(Index n) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  Matrix d = Matrix::Identity(2 * n, 2 * n);
  d.bottomRightCorner(n, n) = -Matrix::Identity(n, n);
  return d;
}

Matrix swap_matrix(Index n) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  Matrix z = Matrix::Zero(2 * n, 2 * n);
  z.topRightCorner(n, n) = -Matrix::Identity(n, n);
  z.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return z;
}

Matrix structure_residual_matrix(const Matrix& x, StructureKind kind) {
  const Index n = mode_count(x);
  switch (kind) {
    case StructureKind::Symmetric:
      return x.transpose() - x;
    case StructureKind::SkewSymmetric:
      return x.transpose() + x;
    default:
      break;
  }
  const Matrix j = symplectic_form(n);
  switch (kind) {
    case StructureKind::Symplectic:
      return x * j * x.transpose() - j;
    case StructureKind::AntiSymplectic:
      return x * j * x.transpose() + j;
    case StructureKind::Hamiltonian: {
      const Matrix jx = j * x;
      return jx.transpose() - jx;
    }
    case StructureKind::SkewHamiltonian: {
      const Matrix jx = j * x;
      return jx.transpose() + jx;
    }
    default:
      break;
  }
  throw Error("unhandled structure kind");
}

StructureCheck check_structure(const Matrix& x, StructureKind kind,
                               const TolerancePolicy& tol) {
  const double residual = structure_residual_matrix(x, kind).norm();
  return {tol.accepts(residual, x.norm()), residual};
}

Matrix associated_skew_hamiltonian(const Matrix& x) {
  const Matrix j = symplectic_form(mode_count(x));
  return -x * j * x.transpose() * j;
}

Matrix associated_skew_hamiltonian_left(const Matrix& x) {
  const Matrix j = symplectic_form(mode_count(x));
  return -x.transpose() * j * x * j;
}

double determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidDimension("determinant of non-square matrix");
  return Eigen::PartialPivLU<Matrix>(m).determinant();
}

bool is_degenerate(const Matrix& m, const TolerancePolicy& tol) {
  const auto sv = Eigen::JacobiSVD<Matrix>(m).singularValues();
  return sv(sv.size() - 1) <= tol.rel_tol * sv(0);
}

}  // namespace sympolar
