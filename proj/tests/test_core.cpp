#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.hpp"

using namespace sympolar;
using namespace sympolar::testing;

TEST_CASE("symplectic form matches its block definition") {
  const Matrix j1 = symplectic_form(1);
  Matrix expected(2, 2);
  expected << 0, -1, 1, 0;
  CHECK((j1 - expected).norm() == 0.0);

  for (Index n : {1, 2, 3}) {
    const Matrix j = symplectic_form(n);
    CHECK((j * j + Matrix::Identity(2 * n, 2 * n)).norm() == 0.0);
    CHECK((j.transpose() + j).norm() == 0.0);
    CHECK(determinant(j) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(symplectic_form(0), InvalidDimension);
}

TEST_CASE("signature matrix identities") {
  const Matrix d1 = signature_matrix(1);
  Matrix expected(2, 2);
  expected << 1, 0, 0, -1;
  CHECK((d1 - expected).norm() == 0.0);

  for (Index n : {1, 2, 3}) {
    const Matrix d = signature_matrix(n);
    const Matrix j = symplectic_form(n);
    CHECK((d * d - Matrix::Identity(2 * n, 2 * n)).norm() == 0.0);
    CHECK((d * j * d.transpose() + j).norm() == 0.0);
  }
  CHECK_THROWS_AS(signature_matrix(0), InvalidDimension);
}

TEST_CASE("swap matrix identities") {
  const Matrix z1 = swap_matrix(1);
  Matrix expected(2, 2);
  expected << 0, -1, -1, 0;
  CHECK((z1 - expected).norm() == 0.0);

  for (Index n : {1, 2, 3}) {
    const Matrix z = swap_matrix(n);
    const Matrix j = symplectic_form(n);
    const Matrix d = signature_matrix(n);
    CHECK((z * z - Matrix::Identity(2 * n, 2 * n)).norm() == 0.0);
    CHECK((z * j * z.transpose() + j).norm() == 0.0);
    CHECK((j * z - d).norm() == 0.0);
  }
  CHECK_THROWS_AS(swap_matrix(0), InvalidDimension);
}

TEST_CASE("structure checks on the fixed matrices") {
  const Matrix j = symplectic_form(1);
  const Matrix d = signature_matrix(1);
  const Matrix i = Matrix::Identity(2, 2);

  auto check = check_structure(j, StructureKind::Hamiltonian);
  CHECK(check.holds);
  CHECK(check.residual == 0.0);

  check = check_structure(i, StructureKind::SkewHamiltonian);
  CHECK(check.holds);
  CHECK(check.residual == 0.0);

  check = check_structure(d, StructureKind::AntiSymplectic);
  CHECK(check.holds);
  CHECK(check.residual == 0.0);

  CHECK(check_structure(i, StructureKind::Symplectic).holds);

  check = check_structure(d, StructureKind::Symplectic);
  CHECK_FALSE(check.holds);
  // D J D^T - J = -2J, whose Frobenius norm is 2 sqrt(2) for one mode.
  CHECK(check.residual == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("associated skew-Hamiltonian products on fixed inputs") {
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix j = symplectic_form(1);
  const Matrix d = signature_matrix(1);

  CHECK((associated_skew_hamiltonian(i2) - i2).norm() == 0.0);
  CHECK((associated_skew_hamiltonian(j) - i2).norm() == 0.0);
  CHECK((associated_skew_hamiltonian(2.0 * i2) - 4.0 * i2).norm() == 0.0);
  CHECK((associated_skew_hamiltonian(d) + i2).norm() == 0.0);

  CHECK((associated_skew_hamiltonian_left(i2) - i2).norm() == 0.0);
  CHECK((associated_skew_hamiltonian_left(d) + i2).norm() == 0.0);
  CHECK((associated_skew_hamiltonian_left(3.0 * j) - 9.0 * i2).norm() == 0.0);
}

TEST_CASE("associated product is skew-Hamiltonian for random inputs") {
  RandomStream rng(11);
  for (Index n : {1, 2, 3, 4}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix x = random_matrix(2 * n, 2 * n, rng);
      const Matrix y = associated_skew_hamiltonian(x);
      CHECK(scaled_structure_residual(y, StructureKind::SkewHamiltonian) <=
            1e-12);
      CHECK((associated_skew_hamiltonian_left(x) -
             associated_skew_hamiltonian(x.transpose()))
                .norm() == 0.0);
    }
  }
}

TEST_CASE("determinant of the associated product is the squared determinant") {
  RandomStream rng(12);
  for (Index n : {1, 2, 3, 4}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix x = random_nondegenerate(n, rng);
      const double dx = determinant(x);
      const double dy = determinant(associated_skew_hamiltonian(x));
      CHECK(std::abs(dy - dx * dx) <= 1e-8 * dx * dx);
    }
  }
}

TEST_CASE("structure checks are transpose-consistent") {
  RandomStream rng(13);
  for (Index n : {1, 2, 3}) {
    const Matrix s = random_symplectic(n, rng);
    CHECK(check_structure(s, StructureKind::Symplectic).holds);
    CHECK(check_structure(s.transpose(), StructureKind::Symplectic).holds);

    const Matrix w = random_skew_hamiltonian(n, rng);
    CHECK(check_structure(w, StructureKind::SkewHamiltonian).holds);
    CHECK(check_structure(w.transpose(), StructureKind::SkewHamiltonian).holds);

    // J H is symmetric iff H is Hamiltonian; build one directly.
    const Matrix j = symplectic_form(n);
    Matrix sym = random_matrix(2 * n, 2 * n, rng);
    sym = 0.5 * (sym + sym.transpose());
    const Matrix h = -j * sym;  // J h = sym since J^{-1} = -J
    CHECK(check_structure(h, StructureKind::Hamiltonian).holds);
    CHECK(check_structure(h.transpose(), StructureKind::Hamiltonian).holds);
  }
}

TEST_CASE("mode count validation") {
  CHECK_THROWS_AS(mode_count(Matrix::Zero(3, 3)), InvalidDimension);
  CHECK_THROWS_AS(mode_count(Matrix::Zero(2, 4)), InvalidDimension);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(mode_count(bad), InvalidDimension);
  CHECK(mode_count(Matrix::Zero(6, 6)) == 3);
}

TEST_CASE("degeneracy decision is scale-invariant") {
  Matrix spread(2, 2);
  spread << 1e8, 0, 0, 1e-4;  // singular-value ratio 1e-12, under rel_tol
  CHECK(is_degenerate(spread));
  Matrix mild(2, 2);
  mild << 1e2, 0, 0, 1e-4;  // ratio 1e-6, above rel_tol
  CHECK_FALSE(is_degenerate(mild));
  CHECK_FALSE(is_degenerate(1e-8 * Matrix::Identity(4, 4)));
  CHECK(is_degenerate(Matrix::Zero(2, 2)));
}
