#include "sympolar/generate.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "sympolar/core.hpp"

namespace sympolar {

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RandomStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Matrix random_matrix(Index rows, Index cols, RandomStream& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

Matrix random_nondegenerate(Index n, RandomStream& rng, double max_condition) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  for (int attempt = 0; attempt < 256; ++attempt) {
    Matrix m = random_matrix(2 * n, 2 * n, rng);
    const auto sv = Eigen::JacobiSVD<Matrix>(m).singularValues();
    if (sv(sv.size() - 1) > 0.0 && sv(0) / sv(sv.size() - 1) <= max_condition)
      return m;
  }
  throw Error("failed to draw a well-conditioned matrix");
}

namespace {

Matrix random_symplectic_candidate(Index n, RandomStream& rng) {
  const Matrix j = symplectic_form(n);
  const Index k = 2 * n;
  Matrix s = Matrix::Identity(k, k);

  // diag(A, A^{-T}) with A kept close to the identity
  Matrix a = Matrix::Identity(n, n) + 0.25 * random_matrix(n, n, rng);
  Matrix block = Matrix::Zero(k, k);
  block.topLeftCorner(n, n) = a;
  block.bottomRightCorner(n, n) = a.inverse().transpose();
  s = s * block;

  // upper block-triangular shear with symmetric B
  Matrix b = 0.35 * random_matrix(n, n, rng);
  b = 0.5 * (b + b.transpose());
  Matrix shear = Matrix::Identity(k, k);
  shear.topRightCorner(n, n) = b;
  s = s * shear;

  s = s * j;

  // lower block-triangular shear with symmetric C
  Matrix c = 0.35 * random_matrix(n, n, rng);
  c = 0.5 * (c + c.transpose());
  Matrix shear2 = Matrix::Identity(k, k);
  shear2.bottomLeftCorner(n, n) = c;
  s = s * shear2;

  return s;
}

}  // namespace

Matrix random_symplectic(Index n, RandomStream& rng) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  for (int attempt = 0; attempt < 256; ++attempt) {
    Matrix s = random_symplectic_candidate(n, rng);
    if (structure_residual_matrix(s, StructureKind::Symplectic).norm() <= 1e-12)
      return s;
  }
  throw Error("failed to build a symplectic matrix at the residual target");
}

Matrix random_skew_hamiltonian(Index n, RandomStream& rng) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  const Matrix a = random_matrix(n, n, rng);
  Matrix b = random_matrix(n, n, rng);
  b = 0.5 * (b - b.transpose());
  Matrix c = random_matrix(n, n, rng);
  c = 0.5 * (c - c.transpose());
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  w.topLeftCorner(n, n) = a;
  w.topRightCorner(n, n) = b;
  w.bottomLeftCorner(n, n) = c;
  w.bottomRightCorner(n, n) = a.transpose();
  return w;
}

Matrix random_spd(Index n, RandomStream& rng, double lo, double hi) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  const Index k = 2 * n;
  const Matrix g = random_matrix(k, k, rng);
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  Vector evals(k);
  for (Index i = 0; i < k; ++i)
    evals(i) = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  Matrix a = q * evals.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

GaussianChannelTriple random_valid_channel(Index n, RandomStream& rng) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  const Index k = 2 * n;
  const Matrix kmat = random_nondegenerate(n, rng);
  Vector l(k);
  for (Index i = 0; i < k; ++i) l(i) = rng.normal();

  const Matrix g = random_matrix(k, k, rng) / std::sqrt(static_cast<double>(k));
  Matrix b = g.transpose() * g;
  b = 0.5 * (b + b.transpose());

  const Matrix j = symplectic_form(n);
  const Matrix skew = j - kmat.transpose() * j * kmat;
  const ComplexMatrix hermitian =
      b.cast<Complex>() - Complex(0.0, 0.5) * skew.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian,
                                                      Eigen::EigenvaluesOnly);
  const double shift =
      std::max(0.0, -solver.eigenvalues().minCoeff()) + 1e-6;
  const Matrix alpha = b + shift * Matrix::Identity(k, k);
  return {kmat, l, alpha};
}

}  // namespace sympolar
