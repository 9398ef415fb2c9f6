#include "sympolar/matrix_functions.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace sympolar {

namespace {

void require_square_finite(const Matrix& a) {
  if (a.rows() != a.cols())
    throw InvalidDimension("expected a square matrix, got " +
                           std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()));
  if (a.rows() == 0) throw InvalidDimension("expected a nonempty matrix");
  if (!a.allFinite()) throw InvalidDimension("matrix entries must be finite");
}

/// Diagonal block layout of a quasi-triangular matrix: start index and size
/// (1 or 2) of each block.  Eigen zeroes split subdiagonal entries exactly,
/// so a nonzero T(i+1, i) marks a 2x2 block.
std::vector<std::pair<Index, Index>> diagonal_blocks(const Matrix& t) {
  std::vector<std::pair<Index, Index>> blocks;
  const Index size = t.rows();
  for (Index i = 0; i < size;) {
    if (i + 1 < size && t(i + 1, i) != 0.0) {
      blocks.emplace_back(i, 2);
      i += 2;
    } else {
      blocks.emplace_back(i, 1);
      i += 1;
    }
  }
  return blocks;
}

/// Principal square root of a real 2x2 block with complex-conjugate
/// eigenvalues theta +- i mu, in closed form from trace and determinant:
/// U = (B + sqrt(det) I) / (2 alpha) with alpha = sqrt((theta + sqrt(det))/2).
Matrix sqrt_block_2x2(const Matrix& b) {
  const double theta = 0.5 * b.trace();
  const double det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  const double modulus = std::sqrt(det);  // |lambda|, det > 0 for complex pairs
  const double alpha = std::sqrt(0.5 * (theta + modulus));
  return (b + modulus * Matrix::Identity(2, 2)) / (2.0 * alpha);
}

/// Solves A X + X B = C for tiny blocks (sizes 1 or 2) via the Kronecker
/// form (I (x) A + B^T (x) I) vec X = vec C.
Matrix solve_sylvester_small(const Matrix& a, const Matrix& b, const Matrix& c) {
  const Index p = a.rows();
  const Index q = b.rows();
  Matrix k = Matrix::Zero(p * q, p * q);
  for (Index j = 0; j < q; ++j) k.block(j * p, j * p, p, p) = a;
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < q; ++j)
      k.block(i * p, j * p, p, p) += b(j, i) * Matrix::Identity(p, p);
  Eigen::Map<const Vector> rhs(c.data(), p * q);
  Vector x = Eigen::PartialPivLU<Matrix>(k).solve(rhs);
  return Eigen::Map<const Matrix>(x.data(), p, q);
}

}  // namespace

RealSchurForm real_schur(const Matrix& a) {
  require_square_finite(a);
  Eigen::RealSchur<Matrix> schur;
  schur.setMaxIterations(30 * a.rows());
  schur.compute(a, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw NonConvergence("real Schur reduction did not settle within " +
                         std::to_string(30 * a.rows()) + " sweeps");
  return {schur.matrixU(), schur.matrixT()};
}

std::vector<Complex> schur_eigenvalues(const RealSchurForm& schur) {
  const Matrix& t = schur.t;
  std::vector<Complex> eigenvalues;
  eigenvalues.reserve(t.rows());
  for (const auto& [start, size] : diagonal_blocks(t)) {
    if (size == 1) {
      eigenvalues.emplace_back(t(start, start), 0.0);
      continue;
    }
    const double mean = 0.5 * (t(start, start) + t(start + 1, start + 1));
    const double det = t(start, start) * t(start + 1, start + 1) -
                       t(start, start + 1) * t(start + 1, start);
    const double disc = mean * mean - det;
    if (disc < 0.0) {
      const double mu = std::sqrt(-disc);
      eigenvalues.emplace_back(mean, mu);
      eigenvalues.emplace_back(mean, -mu);
    } else {
      const double root = std::sqrt(disc);
      eigenvalues.emplace_back(mean + root, 0.0);
      eigenvalues.emplace_back(mean - root, 0.0);
    }
  }
  return eigenvalues;
}

EigenClassification classify_eigenvalues(const std::vector<Complex>& eigenvalues,
                                         const TolerancePolicy& tol) {
  EigenClassification result;
  for (const Complex& ev : eigenvalues)
    result.spectral_radius = std::max(result.spectral_radius, std::abs(ev));
  const double threshold = tol.imag_tol * (1.0 + result.spectral_radius);
  for (const Complex& ev : eigenvalues) {
    if (std::abs(ev.imag()) > threshold) continue;
    const double re = ev.real();
    result.real_eigenvalues.push_back(re);
    if (std::abs(re) <= threshold)
      result.has_zero = true;
    else if (re < 0.0)
      result.has_negative_real = true;
    else
      result.has_positive_real = true;
  }
  std::sort(result.real_eigenvalues.begin(), result.real_eigenvalues.end());
  return result;
}

EigenClassification classify_real_eigenvalues(const Matrix& a,
                                              const TolerancePolicy& tol) {
  return classify_eigenvalues(schur_eigenvalues(real_schur(a)), tol);
}

Matrix principal_sqrt_real(const Matrix& a, const TolerancePolicy& tol) {
  const RealSchurForm schur = real_schur(a);
  const EigenClassification spectrum =
      classify_eigenvalues(schur_eigenvalues(schur), tol);
  if (spectrum.has_zero || spectrum.has_negative_real) {
    std::ostringstream msg;
    msg << "principal square root needs no zero or negative real eigenvalues;"
        << " offending real eigenvalues:";
    const double threshold = tol.imag_tol * (1.0 + spectrum.spectral_radius);
    for (double ev : spectrum.real_eigenvalues)
      if (ev <= threshold) msg << ' ' << ev;
    throw PreconditionViolated(FailedPrecondition::SpectrumSign, msg.str());
  }

  const Matrix& t = schur.t;
  const auto blocks = diagonal_blocks(t);
  const Index nb = static_cast<Index>(blocks.size());
  Matrix u = Matrix::Zero(t.rows(), t.cols());

  for (const auto& [start, size] : blocks) {
    if (size == 1)
      u(start, start) = std::sqrt(t(start, start));
    else
      u.block(start, start, 2, 2) = sqrt_block_2x2(t.block(start, start, 2, 2));
  }

  // Back-substitute superdiagonal by superdiagonal:
  // U_ii U_ij + U_ij U_jj = T_ij - sum_{i<k<j} U_ik U_kj.
  for (Index gap = 1; gap < nb; ++gap) {
    for (Index bi = 0; bi + gap < nb; ++bi) {
      const Index bj = bi + gap;
      const auto [ri, pi] = blocks[bi];
      const auto [rj, pj] = blocks[bj];
      Matrix rhs = t.block(ri, rj, pi, pj);
      for (Index bk = bi + 1; bk < bj; ++bk) {
        const auto [rk, pk] = blocks[bk];
        rhs.noalias() -= u.block(ri, rk, pi, pk) * u.block(rk, rj, pk, pj);
      }
      u.block(ri, rj, pi, pj) = solve_sylvester_small(
          u.block(ri, ri, pi, pi), u.block(rj, rj, pj, pj), rhs);
    }
  }

  return schur.q * u * schur.q.transpose();
}

}  // namespace sympolar
