// Acceptance suite: property-based gates over the whole library, one
// pass/fail line per criterion.  Exit code is the number of failed criteria.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sympolar/channels.hpp"
#include "sympolar/generate.hpp"
#include "sympolar/polar.hpp"

using namespace sympolar;

namespace {

double scaled_structure_residual(const Matrix& x, StructureKind kind) {
  const double r = structure_residual_matrix(x, kind).norm();
  const double s = x.norm();
  return r / (1.0 + s * s);
}

double reconstruction_residual(const Matrix& x, const Factorization& f) {
  return (variant_product(f.variant, f.factors) - x).norm() / (1.0 + x.norm());
}

bool spectrum_admits(const Matrix& x, Variant v) {
  const bool left = v == Variant::SM || v == Variant::SA ||
                    v == Variant::SDM || v == Variant::SDA;
  const Matrix y = left ? associated_skew_hamiltonian_left(x)
                        : associated_skew_hamiltonian(x);
  const auto cls = classify_real_eigenvalues(y);
  if (cls.has_zero) return false;
  switch (v) {
    case Variant::MS:
    case Variant::AS:
    case Variant::SM:
    case Variant::SA:
      return !cls.has_negative_real;
    case Variant::MDS:
    case Variant::ADS:
    case Variant::SDM:
    case Variant::SDA:
      return !cls.has_positive_real;
    default:
      return true;
  }
}

/// Inputs for the Hamiltonian-root suites: random nondegenerate matrices,
/// one quarter of them perturbations of the signature matrix so that the
/// associated Y has negative real eigenvalues.
std::vector<Matrix> theorem1_inputs(Index n, int count, RandomStream& rng,
                                    int* negative_count) {
  std::vector<Matrix> inputs;
  const int negative_target = count / 4;
  while (static_cast<int>(inputs.size()) < negative_target) {
    const Matrix x =
        signature_matrix(n) + 0.35 * random_matrix(2 * n, 2 * n, rng);
    if (is_degenerate(x)) continue;
    const auto cls = classify_real_eigenvalues(associated_skew_hamiltonian(x));
    if (cls.has_zero || !cls.has_negative_real) continue;
    inputs.push_back(x);
  }
  *negative_count = static_cast<int>(inputs.size());
  while (static_cast<int>(inputs.size()) < count)
    inputs.push_back(random_nondegenerate(n, rng));
  return inputs;
}

struct Criterion {
  int id;
  const char* title;
  double time_limit_seconds;
  std::function<bool(std::string&)> run;
};

bool criterion_lemma1(std::string& detail) {
  RandomStream rng(101);
  double worst_structure = 0.0;
  double worst_det = 0.0;
  for (Index n : {1, 2, 3, 4}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix x = random_matrix(2 * n, 2 * n, rng);
      const Matrix y = associated_skew_hamiltonian(x);
      const double scale = 1.0 + x.squaredNorm();
      const double structure =
          structure_residual_matrix(y, StructureKind::SkewHamiltonian).norm() /
          scale;
      worst_structure = std::max(worst_structure, structure);
      const double dx2 = determinant(x) * determinant(x);
      const double det_rel = std::abs(determinant(y) - dx2) / dx2;
      worst_det = std::max(worst_det, det_rel);
    }
  }
  std::ostringstream s;
  s << "worst skew-Hamiltonian residual " << worst_structure
    << " (gate 1e-10), worst det relative error " << worst_det
    << " (gate 1e-8)";
  detail = s.str();
  return worst_structure <= 1e-10 && worst_det <= 1e-8;
}

bool criterion_theorem3(std::string& detail) {
  RandomStream rng(102);
  double worst = 0.0;
  int accepted = 0;
  while (accepted < 200) {
    const Index n = 1 + accepted % 4;
    const Matrix x = random_matrix(2 * n, 2 * n, rng);
    const auto cls = classify_real_eigenvalues(associated_skew_hamiltonian(x));
    if (cls.has_zero || cls.has_negative_real) continue;
    ++accepted;

    const Factorization f = decompose(x, Variant::MS);
    worst = std::max(worst, reconstruction_residual(x, f));
    worst = std::max(worst, scaled_structure_residual(
                                f.factors[0], StructureKind::SkewHamiltonian));
    worst = std::max(worst, scaled_structure_residual(f.factors[1],
                                                      StructureKind::Symplectic));
  }
  std::ostringstream s;
  s << "200 admissible inputs, worst residual " << worst << " (gate 1e-8)";
  detail = s.str();
  return worst <= 1e-8;
}

bool criterion_theorem1(std::string& detail) {
  RandomStream rng(103);
  double worst = 0.0;
  int negative_total = 0;
  for (Index n : {1, 2, 3}) {
    int negative_count = 0;
    const auto inputs = theorem1_inputs(n, 100, rng, &negative_count);
    negative_total += negative_count;
    for (const Matrix& x : inputs) {
      const Factorization f = decompose(x, Variant::HT);
      worst = std::max(worst, reconstruction_residual(x, f));
      worst = std::max(worst, scaled_structure_residual(
                                  f.factors[0], StructureKind::Hamiltonian));
      worst = std::max(worst, scaled_structure_residual(
                                  f.factors[1], StructureKind::AntiSymplectic));
    }
  }
  std::ostringstream s;
  s << "300 inputs (" << negative_total
    << " with negative real eigenvalues of Y, gate >= 60), worst residual "
    << worst << " (gate 1e-7)";
  detail = s.str();
  return worst <= 1e-7 && negative_total >= 60;
}

bool criterion_corollaries(std::string& detail) {
  RandomStream rng(104);
  double worst_ms_family = 0.0;
  double worst_ht_family = 0.0;
  int exercised = 0;
  for (Index n : {1, 2, 3}) {
    int negative_count = 0;
    const auto inputs = theorem1_inputs(n, 40, rng, &negative_count);
    for (const Matrix& x : inputs) {
      for (Variant v : {Variant::RDS, Variant::SDR, Variant::AS, Variant::ADS,
                        Variant::SA, Variant::SDA}) {
        const bool ht_family = v == Variant::RDS || v == Variant::SDR;
        if (!ht_family && !spectrum_admits(x, v)) continue;
        const Factorization f = decompose(x, v);
        const auto kinds = variant_factor_kinds(v);
        double residual = reconstruction_residual(x, f);
        residual = std::max(residual,
                            scaled_structure_residual(f.factors[0], kinds[0]));
        residual = std::max(residual,
                            scaled_structure_residual(f.factors[1], kinds[1]));
        (ht_family ? worst_ht_family : worst_ms_family) =
            std::max(ht_family ? worst_ht_family : worst_ms_family, residual);
        ++exercised;
      }
    }
  }

  // D-reflection: classifying -(XD) J (XD)^T J swaps the sign flags.
  bool swap_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + trial % 3;
    const Matrix x = random_matrix(2 * n, 2 * n, rng);
    const Matrix d = signature_matrix(n);
    const auto cls = classify_real_eigenvalues(associated_skew_hamiltonian(x));
    const auto refl =
        classify_real_eigenvalues(associated_skew_hamiltonian(x * d));
    swap_ok = swap_ok && cls.has_negative_real == refl.has_positive_real &&
              cls.has_positive_real == refl.has_negative_real &&
              cls.has_zero == refl.has_zero;
  }

  std::ostringstream s;
  s << exercised << " variant runs, worst residual "
    << std::max(worst_ms_family, worst_ht_family)
    << " (gates 1e-8 / 1e-7), spectrum swap "
    << (swap_ok ? "holds" : "violated");
  detail = s.str();
  return worst_ms_family <= 1e-8 && worst_ht_family <= 1e-7 && swap_ok;
}

bool criterion_monoid(std::string& detail) {
  RandomStream rng(105);
  bool identity_exact = true;
  double worst_assoc = 0.0;
  double worst_validity = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + trial % 3;
    const GaussianChannelTriple a = random_valid_channel(n, rng);
    const GaussianChannelTriple b = random_valid_channel(n, rng);
    const GaussianChannelTriple c = random_valid_channel(n, rng);
    const GaussianChannelTriple id = identity_channel(n);

    const GaussianChannelTriple right = compose(a, id);
    const GaussianChannelTriple left = compose(id, a);
    identity_exact = identity_exact && (right.k - a.k).norm() == 0.0 &&
                     (right.l - a.l).norm() == 0.0 &&
                     (right.alpha - a.alpha).norm() == 0.0 &&
                     (left.k - a.k).norm() == 0.0 &&
                     (left.l - a.l).norm() == 0.0 &&
                     (left.alpha - a.alpha).norm() == 0.0;

    const GaussianChannelTriple ab_c = compose(compose(a, b), c);
    const GaussianChannelTriple a_bc = compose(a, compose(b, c));
    worst_assoc = std::max(
        {worst_assoc, (ab_c.k - a_bc.k).cwiseAbs().maxCoeff(),
         (ab_c.l - a_bc.l).cwiseAbs().maxCoeff(),
         (ab_c.alpha - a_bc.alpha).cwiseAbs().maxCoeff()});

    const auto validity = validate_channel(compose(a, b));
    worst_validity = std::min(worst_validity, validity.min_eigenvalue);
  }
  std::ostringstream s;
  s << "identity laws " << (identity_exact ? "exact" : "violated")
    << ", worst associativity gap " << worst_assoc
    << " (gate 1e-12), worst composed min eigenvalue " << worst_validity
    << " (gate -1e-9)";
  detail = s.str();
  return identity_exact && worst_assoc <= 1e-12 && worst_validity >= -1e-9;
}

bool criterion_one_mode(std::string& detail) {
  RandomStream rng(106);
  double worst = 0.0;
  bool cases_ok = true;
  int checked = 0;
  while (checked < 100) {
    const Matrix k = random_matrix(2, 2, rng);
    const Matrix y = associated_skew_hamiltonian_left(k);
    const double det = determinant(k);
    worst = std::max(worst, (y - det * Matrix::Identity(2, 2)).norm() /
                                (1.0 + k.squaredNorm()));
    if (is_degenerate(k)) continue;
    ++checked;
    const auto cc = classify_channel(k);
    const ChannelCase auto_case = cc.a_admissible    ? ChannelCase::AForm
                                  : cc.da_admissible ? ChannelCase::DAForm
                                                     : ChannelCase::DRForm;
    cases_ok = cases_ok && ((det > 0.0 && auto_case == ChannelCase::AForm) ||
                            (det < 0.0 && auto_case == ChannelCase::DAForm));
  }
  std::ostringstream s;
  s << "worst identity residual " << worst
    << " (gate 1e-12), case selection "
    << (cases_ok ? "matches det sign" : "violated");
  detail = s.str();
  return worst <= 1e-12 && cases_ok;
}

bool criterion_theorem4(std::string& detail) {
  RandomStream rng(107);
  double worst = 0.0;
  bool shape_ok = true;
  for (Index n : {1, 2, 3}) {
    for (int trial = 0; trial < 50; ++trial) {
      const GaussianChannelTriple c = random_valid_channel(n, rng);
      const ChannelNormalForm nf = normal_form(c);

      shape_ok = shape_ok && nf.canonical.l.norm() == 0.0;
      const Matrix& lam = nf.canonical.alpha;
      shape_ok = shape_ok &&
                 (lam - Matrix(lam.diagonal().asDiagonal())).norm() == 0.0;
      for (Index m = 0; m < n; ++m)
        shape_ok = shape_ok && lam(m, m) == lam(n + m, n + m) &&
                   (m + 1 >= n || lam(m, m) >= lam(m + 1, m + 1));

      const StructureKind core_kind = nf.form == ChannelCase::DRForm
                                          ? StructureKind::Symmetric
                                          : StructureKind::SkewSymmetric;
      worst = std::max(worst,
                       scaled_structure_residual(nf.core_factor, core_kind));
      worst = std::max(worst, nf.reconstruction_residual);
    }
  }
  std::ostringstream s;
  s << "150 channels, canonical shape " << (shape_ok ? "exact" : "violated")
    << ", worst residual " << worst << " (gate 1e-8)";
  detail = s.str();
  return shape_ok && worst <= 1e-8;
}

bool criterion_williamson(std::string& detail) {
  RandomStream rng(108);
  double worst_diag = 0.0;
  double worst_symp = 0.0;
  double worst_nu = 0.0;
  for (Index n : {1, 2, 3, 4}) {
    const Matrix j = symplectic_form(n);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix alpha = random_spd(n, rng);
      const WilliamsonForm wf = williamson(alpha);

      worst_diag = std::max(
          worst_diag,
          (wf.s.transpose() * alpha * wf.s - wf.lambda).norm() / alpha.norm());
      worst_symp = std::max(
          worst_symp, (wf.s * j * wf.s.transpose() - j).norm() /
                          (1.0 + wf.s.squaredNorm()));

      Eigen::EigenSolver<Matrix> es(j * alpha);
      std::vector<double> moduli(2 * n);
      for (Index i = 0; i < 2 * n; ++i)
        moduli[i] = std::abs(es.eigenvalues()(i));
      std::sort(moduli.begin(), moduli.end(), std::greater<>());
      for (Index m = 0; m < n; ++m) {
        worst_nu = std::max(worst_nu, std::abs(wf.nu(m) - moduli[2 * m]));
        worst_nu = std::max(worst_nu, std::abs(wf.nu(m) - moduli[2 * m + 1]));
      }
    }
  }
  std::ostringstream s;
  s << "worst diagonalization residual " << worst_diag
    << " (gate 1e-9), worst symplectic residual " << worst_symp
    << " (gate 1e-9), worst nu mismatch " << worst_nu << " (gate 1e-8)";
  detail = s.str();
  return worst_diag <= 1e-9 && worst_symp <= 1e-9 && worst_nu <= 1e-8;
}

bool criterion_parameter_counts(std::string& detail) {
  bool ok = true;
  for (Index n = 1; n <= 10; ++n) {
    const auto counts = parameter_counts(n);
    ok = ok && counts.general == 4 * n * n &&
         counts.symplectic == n * (2 * n + 1) &&
         counts.canonical_core == n * (2 * n - 1) &&
         counts.skew_symmetric == n * (2 * n - 1) &&
         counts.symmetric == n * (2 * n + 1) &&
         counts.general - counts.symplectic == counts.canonical_core;
  }
  detail = ok ? "formulas match for n = 1..10" : "mismatch";
  return ok;
}

bool criterion_failure_honesty(std::string& detail) {
  bool ok = true;
  std::string messages;

  try {
    decompose(signature_matrix(1), Variant::MS);
    ok = false;
    messages += "decompose(D, ms) did not fail; ";
  } catch (const PreconditionViolated& e) {
    const std::string what = e.what();
    if (e.reason != FailedPrecondition::SpectrumSign ||
        what.find("negative") == std::string::npos ||
        what.find("-1") == std::string::npos) {
      ok = false;
      messages += "decompose(D, ms) error does not name the eigenvalue; ";
    }
  } catch (...) {
    ok = false;
    messages += "decompose(D, ms) threw the wrong error; ";
  }

  Matrix reflect(2, 2);
  reflect << 1, 0, 0, -1;
  const GaussianChannelTriple flip{reflect, Vector::Zero(2),
                                   Matrix::Identity(2, 2)};
  try {
    normal_form(flip, ChannelCase::AForm);
    ok = false;
    messages += "inadmissible case did not fail; ";
  } catch (const PreconditionViolated& e) {
    const std::string what = e.what();
    if (e.reason != FailedPrecondition::CaseInadmissible ||
        what.find("negative") == std::string::npos) {
      ok = false;
      messages += "inadmissible-case error does not name the sign; ";
    }
  } catch (...) {
    ok = false;
    messages += "inadmissible case threw the wrong error; ";
  }

  detail = ok ? "both failure paths raise PreconditionViolated naming the "
                "offending sign"
              : messages;
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Lemma 1: Y = -X J X^T J skew-Hamiltonian, det Y = (det X)^2", 5.0,
       criterion_lemma1},
      {2, "Theorem 3: X = M S with principal skew-Hamiltonian root", 30.0,
       criterion_theorem3},
      {3, "Theorem 1: X = H T through the Hamiltonian square root", 60.0,
       criterion_theorem1},
      {4, "Corollaries: RDS/SDR/AS/ADS/SA/SDA and the D-reflection swap", 60.0,
       criterion_corollaries},
      {5, "Monoid: identity, associativity, validity preservation", 30.0,
       criterion_monoid},
      {6, "One mode: -K^T J K J = det(K) I and case selection", 10.0,
       criterion_one_mode},
      {7, "Theorem 4: canonical channel triples", 60.0, criterion_theorem4},
      {8, "Williamson: S^T alpha S = diag(nu, nu)", 30.0, criterion_williamson},
      {9, "Parameter bookkeeping", 5.0, criterion_parameter_counts},
      {10, "Failure honesty: no silent fallback", 10.0,
       criterion_failure_honesty},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("threw ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > criterion.time_limit_seconds) {
      ok = false;
      detail += " [time limit exceeded]";
    }
    std::printf("[%s] criterion %2d: %s — %s (%.2f s, limit %.0f s)\n",
                ok ? "PASS" : "FAIL", criterion.id, criterion.title,
                detail.c_str(), elapsed, criterion.time_limit_seconds);
    if (!ok) ++failures;
  }
  return failures;
}
