#include "sympolar/structured_roots.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "sympolar/generate.hpp"

namespace sympolar {

namespace {

constexpr double kClusterTol = 1.5e-8;   // relative eigenvalue pairing width
constexpr double kNullSpaceTol = 1e-7;   // relative singular-value cutoff
constexpr double kPairingTol = 1e-8;     // minimal symplectic pairing size

struct EigenvaluePair {
  Complex value;  // representative; Im >= 0
  bool is_real;
};

/// Groups the spectrum of an eigen-generic skew-Hamiltonian matrix into
/// duplicated pairs and collapses complex-conjugate partners.  Every
/// eigenvalue must appear exactly twice at the clustering tolerance.
std::vector<EigenvaluePair> paired_spectrum(const std::vector<Complex>& raw,
                                            const TolerancePolicy& tol) {
  double radius = 0.0;
  for (const Complex& ev : raw) radius = std::max(radius, std::abs(ev));
  const double pair_width = kClusterTol * (1.0 + radius);
  const double imag_width = tol.imag_tol * (1.0 + radius);

  std::vector<Complex> sorted = raw;
  std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  std::vector<Complex> reps;
  for (std::size_t i = 0; i + 1 < sorted.size(); i += 2) {
    if (std::abs(sorted[i] - sorted[i + 1]) > pair_width) {
      std::ostringstream msg;
      msg << "eigenvalue (" << sorted[i].real() << ", " << sorted[i].imag()
          << "i) has no duplicate partner at tolerance; the input is not "
             "eigen-generic";
      throw DefectiveEigenstructure(msg.str());
    }
    reps.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  }

  // Collapse conjugates: keep Im > 0 representatives, match Im < 0 ones.
  std::vector<EigenvaluePair> pairs;
  std::vector<bool> used(reps.size(), false);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (std::abs(reps[i].imag()) <= imag_width) {
      pairs.push_back({Complex(reps[i].real(), 0.0), true});
      continue;
    }
    bool matched = false;
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(reps[j] - std::conj(reps[i])) <= pair_width) {
        used[j] = true;
        matched = true;
        Complex rep = 0.5 * (reps[i] + std::conj(reps[j]));
        if (rep.imag() < 0.0) rep = std::conj(rep);
        pairs.push_back({rep, false});
        break;
      }
    }
    if (!matched)
      throw DefectiveEigenstructure(
          "complex eigenvalue pair has no conjugate partner at tolerance");
  }

  std::sort(pairs.begin(), pairs.end(),
            [](const EigenvaluePair& a, const EigenvaluePair& b) {
              if (a.value.real() != b.value.real())
                return a.value.real() < b.value.real();
              return a.value.imag() < b.value.imag();
            });
  return pairs;
}

/// Checks that exactly two singular values fall under the null-space cutoff.
template <typename SingularValues>
void require_nullity_two(const SingularValues& sv, const Complex& lambda) {
  const Index k = sv.size();
  const double scale = std::max(sv(0), 1.0);
  const double cutoff = kNullSpaceTol * scale;
  Index small = 0;
  for (Index i = 0; i < k; ++i)
    if (sv(i) <= cutoff) ++small;
  if (small != 2) {
    std::ostringstream msg;
    msg << "eigenvalue (" << lambda.real() << ", " << lambda.imag()
        << "i) has geometric multiplicity " << small
        << " at tolerance, expected 2";
    throw DefectiveEigenstructure(msg.str());
  }
}

}  // namespace

SymplecticBlockDiagonalization symplectic_block_diagonalize(
    const Matrix& y, const TolerancePolicy& tol) {
  const Index n = mode_count(y);
  const Index k = 2 * n;

  const StructureCheck shape = check_structure(y, StructureKind::SkewHamiltonian, tol);
  if (!shape.holds) {
    std::ostringstream msg;
    msg << "input is not skew-Hamiltonian (residual " << shape.residual << ")";
    throw PreconditionViolated(FailedPrecondition::NotSkewHamiltonian, msg.str());
  }
  if (is_degenerate(y, tol))
    throw PreconditionViolated(FailedPrecondition::Degenerate,
                               "input is singular at tolerance");

  const Matrix j = symplectic_form(n);
  const auto pairs = paired_spectrum(schur_eigenvalues(real_schur(y)), tol);

  Matrix u_cols(k, n);
  Matrix v_cols(k, n);
  Matrix small_n = Matrix::Zero(n, n);
  Index col = 0;

  for (const EigenvaluePair& pair : pairs) {
    if (pair.is_real) {
      const double lambda = pair.value.real();
      Eigen::JacobiSVD<Matrix> svd(y - lambda * Matrix::Identity(k, k),
                                   Eigen::ComputeFullV);
      require_nullity_two(svd.singularValues(), pair.value);
      const Vector u1 = svd.matrixV().col(k - 2);
      const Vector u2 = svd.matrixV().col(k - 1);
      const double pairing = u1.dot(j * u2);
      if (std::abs(pairing) < kPairingTol)
        throw DefectiveEigenstructure(
            "symplectic pairing is numerically singular on the eigenspace of " +
            std::to_string(lambda));
      const double gamma = std::sqrt(std::abs(pairing));
      u_cols.col(col) = u1 / gamma;
      v_cols.col(col) = -(gamma / pairing) * u2;
      small_n(col, col) = lambda;
      col += 1;
    } else {
      const Complex lambda = pair.value;
      ComplexMatrix shifted = y.cast<Complex>();
      shifted.diagonal().array() -= lambda;
      Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
      require_nullity_two(svd.singularValues(), lambda);
      const ComplexVector z1 = svd.matrixV().col(k - 2);
      const ComplexVector z2 = svd.matrixV().col(k - 1);
      const Complex pairing = (z1.transpose() * j.cast<Complex>() * z2)(0, 0);
      if (std::abs(pairing) < kPairingTol)
        throw DefectiveEigenstructure(
            "symplectic pairing is numerically singular on a complex eigenspace");
      const double gamma = std::sqrt(0.5 * std::abs(pairing));
      const ComplexVector w1 = z1 / gamma;
      const ComplexVector w2 = (-2.0 * gamma / pairing) * z2;
      u_cols.col(col) = w1.real();
      u_cols.col(col + 1) = w1.imag();
      v_cols.col(col) = w2.real();
      v_cols.col(col + 1) = -w2.imag();
      const double a = lambda.real();
      const double b = lambda.imag();
      small_n(col, col) = a;
      small_n(col, col + 1) = b;
      small_n(col + 1, col) = -b;
      small_n(col + 1, col + 1) = a;
      col += 2;
    }
  }

  if (col != n)
    throw DefectiveEigenstructure("eigenvalue pairing did not fill all modes");

  Matrix s(k, k);
  s.leftCols(n) = u_cols;
  s.rightCols(n) = v_cols;

  // Sanity gates; loose on purpose, callers re-verify at their own policy.
  const double symplectic_residual =
      (s.transpose() * j * s - j).norm() / (1.0 + s.squaredNorm());
  Matrix block = Matrix::Zero(k, k);
  block.topLeftCorner(n, n) = small_n;
  block.bottomRightCorner(n, n) = small_n.transpose();
  const double similarity_residual =
      (y * s - s * block).norm() / ((1.0 + y.norm()) * (1.0 + s.norm()));
  if (symplectic_residual > 1e-6 || similarity_residual > 1e-6)
    throw DefectiveEigenstructure(
        "symplectic block diagonalization failed verification; the input is "
        "too close to a defective configuration");

  return {s, small_n};
}

std::pair<Matrix, Matrix> symmetric_pair_factorization(
    const Matrix& input, const TolerancePolicy& tol) {
  if (input.rows() != input.cols() || input.rows() == 0)
    throw InvalidDimension("expected a nonempty square matrix");
  if (!input.allFinite())
    throw InvalidDimension("matrix entries must be finite");
  const Index k = input.rows();

  if ((input - input.transpose()).norm() <=
      tol.rel_tol * (1.0 + input.squaredNorm()))
    return {input, Matrix::Identity(k, k)};

  // Krylov seeds: canonical basis vectors first, then a fixed pseudorandom
  // batch.  First basis that is full rank at tolerance wins.
  constexpr double kAcceptRatio = 1e-6;
  constexpr double kRankFloor = 1e-12;
  Matrix krylov(k, k);
  Matrix best;
  double best_ratio = -1.0;
  bool chosen = false;
  RandomStream rng(0x5eedbeef);

  for (Index attempt = 0; attempt < k + 8 && !chosen; ++attempt) {
    Vector v(k);
    if (attempt < k) {
      v.setZero();
      v(attempt) = 1.0;
    } else {
      for (Index i = 0; i < k; ++i) v(i) = rng.normal();
      v.normalize();
    }
    krylov.col(0) = v;
    for (Index c = 1; c < k; ++c)
      krylov.col(c) = input * krylov.col(c - 1);
    const auto sv = Eigen::JacobiSVD<Matrix>(krylov).singularValues();
    const double ratio = sv(0) > 0.0 ? sv(k - 1) / sv(0) : 0.0;
    if (ratio >= kAcceptRatio) {
      best = krylov;
      chosen = true;
    } else if (ratio > best_ratio) {
      best = krylov;
      best_ratio = ratio;
    }
  }
  if (!chosen && best_ratio < kRankFloor)
    throw DerogatoryInput(
        "no Krylov seed produced a full-rank basis; the minimal polynomial is "
        "smaller than the characteristic polynomial");

  const Matrix& w = best;
  Eigen::PartialPivLU<Matrix> w_lu(w);

  // Companion form: W^{-1} N W = C with ones on the subdiagonal and last
  // column c = W^{-1} N^k v.
  const Vector last_col = w_lu.solve(input * w.col(k - 1));
  Matrix companion = Matrix::Zero(k, k);
  companion.block(1, 0, k - 1, k - 1) = Matrix::Identity(k - 1, k - 1);
  companion.col(k - 1) = last_col;

  // Characteristic coefficients a_i (monic p(x) = x^k + sum a_i x^i) are the
  // negated companion column; the antitriangular Hankel H2 built from
  // a_1..a_{k-1} and a trailing 1 makes C * H2 symmetric.
  Matrix hankel = Matrix::Zero(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index d = 0; d < k; ++d) {
      const Index coeff = i + d + 1;
      if (coeff < k)
        hankel(i, d) = -last_col(coeff);
      else if (coeff == k)
        hankel(i, d) = 1.0;
    }
  }

  Matrix p_tilde = companion * hankel;
  p_tilde = 0.5 * (p_tilde + p_tilde.transpose());

  Matrix p = w * p_tilde * w.transpose();
  p = 0.5 * (p + p.transpose());
  Matrix gram = w * hankel * w.transpose();
  Matrix q = Eigen::PartialPivLU<Matrix>(gram).inverse();
  q = 0.5 * (q + q.transpose());
  return {p, q};
}

Matrix hamiltonian_sqrt(const Matrix& y, const TolerancePolicy& tol) {
  const Index n = mode_count(y);
  const auto diag = symplectic_block_diagonalize(y, tol);
  const auto [p, q] = symmetric_pair_factorization(diag.n, tol);

  Matrix h0 = Matrix::Zero(2 * n, 2 * n);
  h0.topRightCorner(n, n) = p;
  h0.bottomLeftCorner(n, n) = q;

  const Matrix s_inv = Eigen::PartialPivLU<Matrix>(diag.s).inverse();
  const Matrix h = diag.s * h0 * s_inv;

  const double square_residual = (h * h - y).norm() / (1.0 + y.norm());
  if (square_residual > 1e-6)
    throw DefectiveEigenstructure(
        "hamiltonian square root failed verification (residual " +
        std::to_string(square_residual) +
        "); the input is too close to a defective configuration");
  return h;
}

Matrix skew_hamiltonian_principal_sqrt(const Matrix& y,
                                       const TolerancePolicy& tol,
                                       const SkewHamiltonianSqrtOptions& options) {
  const Index n = mode_count(y);
  const StructureCheck shape = check_structure(y, StructureKind::SkewHamiltonian, tol);
  if (!shape.holds) {
    std::ostringstream msg;
    msg << "input is not skew-Hamiltonian (residual " << shape.residual << ")";
    throw PreconditionViolated(FailedPrecondition::NotSkewHamiltonian, msg.str());
  }

  Matrix m = principal_sqrt_real(y, tol);
  if (options.project_structure) {
    const Matrix j = symplectic_form(n);
    const Matrix projected = 0.5 * (m - j * m.transpose() * j);
    const double res_m = structure_residual_matrix(m, StructureKind::SkewHamiltonian).norm();
    const double res_p = structure_residual_matrix(projected, StructureKind::SkewHamiltonian).norm();
    const double sq_m = (m * m - y).norm();
    const double sq_p = (projected * projected - y).norm();
    if (res_p < res_m && sq_p <= 2.0 * sq_m) m = projected;
  }
  return m;
}

}  // namespace sympolar
