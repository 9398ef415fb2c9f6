#include "sympolar/polar.hpp"

#include <Eigen/LU>
#include <sstream>

namespace sympolar {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::HT: return "ht";
    case Variant::TH: return "th";
    case Variant::RDS: return "rds";
    case Variant::SDR: return "sdr";
    case Variant::MS: return "ms";
    case Variant::AS: return "as";
    case Variant::MDS: return "mds";
    case Variant::ADS: return "ads";
    case Variant::SM: return "sm";
    case Variant::SA: return "sa";
    case Variant::SDM: return "sdm";
    case Variant::SDA: return "sda";
  }
  return "unknown";
}

std::optional<Variant> variant_from_string(std::string_view name) {
  for (Variant v : all_variants)
    if (name == to_string(v)) return v;
  return std::nullopt;
}

bool variant_has_signature_factor(Variant v) {
  switch (v) {
    case Variant::RDS:
    case Variant::SDR:
    case Variant::MDS:
    case Variant::ADS:
    case Variant::SDM:
    case Variant::SDA:
      return true;
    default:
      return false;
  }
}

std::array<StructureKind, 2> variant_factor_kinds(Variant v) {
  using K = StructureKind;
  switch (v) {
    case Variant::HT: return {K::Hamiltonian, K::AntiSymplectic};
    case Variant::TH: return {K::AntiSymplectic, K::Hamiltonian};
    case Variant::RDS: return {K::Symmetric, K::Symplectic};
    case Variant::SDR: return {K::Symplectic, K::Symmetric};
    case Variant::MS: return {K::SkewHamiltonian, K::Symplectic};
    case Variant::AS: return {K::SkewSymmetric, K::Symplectic};
    case Variant::MDS: return {K::SkewHamiltonian, K::Symplectic};
    case Variant::ADS: return {K::SkewSymmetric, K::Symplectic};
    case Variant::SM: return {K::Symplectic, K::SkewHamiltonian};
    case Variant::SA: return {K::Symplectic, K::SkewSymmetric};
    case Variant::SDM: return {K::Symplectic, K::SkewHamiltonian};
    case Variant::SDA: return {K::Symplectic, K::SkewSymmetric};
  }
  throw Error("unhandled variant");
}

Matrix variant_product(Variant v, const std::vector<Matrix>& factors) {
  if (factors.size() != 2)
    throw DimensionMismatch("a factorization carries exactly two stored factors");
  if (!variant_has_signature_factor(v)) return factors[0] * factors[1];
  const Matrix d = signature_matrix(mode_count(factors[0]));
  return factors[0] * d * factors[1];
}

namespace {

/// Which side's associated matrix governs the variant, and which real
/// eigenvalue sign it must avoid.
struct SpectrumRule {
  bool left_sided;      // true: Y' = -X^T J X J, false: Y = -X J X^T J
  bool forbid_negative; // false: forbid positive
};

SpectrumRule spectrum_rule(Variant v) {
  switch (v) {
    case Variant::MS:
    case Variant::AS: return {false, true};
    case Variant::MDS:
    case Variant::ADS: return {false, false};
    case Variant::SM:
    case Variant::SA: return {true, true};
    case Variant::SDM:
    case Variant::SDA: return {true, false};
    default: throw Error("variant has no spectrum rule");
  }
}

void require_spectrum(const Matrix& x, Variant v, const TolerancePolicy& tol) {
  const SpectrumRule rule = spectrum_rule(v);
  const Matrix y = rule.left_sided ? associated_skew_hamiltonian_left(x)
                                   : associated_skew_hamiltonian(x);
  const EigenClassification cls = classify_real_eigenvalues(y, tol);
  const bool bad_sign =
      rule.forbid_negative ? cls.has_negative_real : cls.has_positive_real;
  if (!cls.has_zero && !bad_sign) return;

  const double zero_width = tol.imag_tol * (1.0 + cls.spectral_radius);
  std::ostringstream msg;
  msg << "variant " << to_string(v) << " requires "
      << (rule.left_sided ? "-X^T J X J" : "-X J X^T J")
      << " to have no zero or " << (rule.forbid_negative ? "negative" : "positive")
      << " real eigenvalues; offending real eigenvalues:";
  for (double ev : cls.real_eigenvalues) {
    const bool zero = std::abs(ev) <= zero_width;
    const bool wrong_sign = rule.forbid_negative ? ev < 0.0 : ev > 0.0;
    if (zero || wrong_sign) msg << ' ' << ev;
  }
  throw PreconditionViolated(FailedPrecondition::SpectrumSign, msg.str());
}

/// X = M S with M the principal root of -X J X^T J.  Assumes the spectrum
/// precondition was already enforced.
std::pair<Matrix, Matrix> ms_core(const Matrix& x, const TolerancePolicy& tol) {
  const Matrix y = associated_skew_hamiltonian(x);
  const Matrix m = skew_hamiltonian_principal_sqrt(y, tol);
  const Matrix s = Eigen::PartialPivLU<Matrix>(m).solve(x);
  return {m, s};
}

/// X = H T with H a Hamiltonian root of -X J X^T J.
std::pair<Matrix, Matrix> ht_core(const Matrix& x, Variant v,
                                  const TolerancePolicy& tol) {
  if (is_degenerate(x, tol)) {
    std::ostringstream msg;
    msg << "variant " << to_string(v)
        << " requires det X != 0; the smallest singular value is below "
           "rel_tol times the largest";
    throw PreconditionViolated(FailedPrecondition::Degenerate, msg.str());
  }
  const Matrix y = associated_skew_hamiltonian(x);
  const Matrix h = hamiltonian_sqrt(y, tol);
  const Matrix t = Eigen::PartialPivLU<Matrix>(h).solve(x);
  return {h, t};
}

Factorization assemble(const Matrix& x, Variant variant,
                       std::vector<Matrix> factors,
                       const TolerancePolicy& tol) {
  Factorization f;
  f.variant = variant;
  f.factors = std::move(factors);
  const auto kinds = variant_factor_kinds(variant);
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    const StructureCheck check = check_structure(f.factors[i], kinds[i], tol);
    f.structure_report.push_back({kinds[i], check.residual, check.holds});
  }
  f.reconstruction_residual =
      (variant_product(variant, f.factors) - x).norm() / (1.0 + x.norm());
  return f;
}

}  // namespace

Factorization decompose(const Matrix& x, Variant variant,
                        const TolerancePolicy& tol) {
  const Index n = mode_count(x);
  const Matrix j = symplectic_form(n);
  const Matrix d = signature_matrix(n);

  switch (variant) {
    case Variant::MS: {
      require_spectrum(x, variant, tol);
      auto [m, s] = ms_core(x, tol);
      return assemble(x, variant, {std::move(m), std::move(s)}, tol);
    }
    case Variant::AS: {
      require_spectrum(x, variant, tol);
      auto [m, s] = ms_core(x, tol);
      return assemble(x, variant, {-m * j, j * s}, tol);
    }
    case Variant::MDS: {
      require_spectrum(x, variant, tol);
      auto [m, s1] = ms_core(x * d, tol);
      return assemble(x, variant, {std::move(m), d * s1 * d}, tol);
    }
    case Variant::ADS: {
      require_spectrum(x, variant, tol);
      auto [m, s1] = ms_core(x * d, tol);
      return assemble(x, variant, {-m * j, d * (j * s1) * d}, tol);
    }
    case Variant::SM: {
      require_spectrum(x, variant, tol);
      auto [m, s] = ms_core(x.transpose(), tol);
      return assemble(x, variant, {s.transpose(), m.transpose()}, tol);
    }
    case Variant::SA: {
      require_spectrum(x, variant, tol);
      auto [m, s] = ms_core(x.transpose(), tol);
      return assemble(x, variant,
                      {(j * s).transpose(), (-m * j).transpose()}, tol);
    }
    case Variant::SDM: {
      require_spectrum(x, variant, tol);
      auto [m, s1] = ms_core(x.transpose() * d, tol);
      return assemble(x, variant,
                      {(d * s1 * d).transpose(), m.transpose()}, tol);
    }
    case Variant::SDA: {
      require_spectrum(x, variant, tol);
      auto [m, s1] = ms_core(x.transpose() * d, tol);
      return assemble(x, variant,
                      {(d * (j * s1) * d).transpose(), (-m * j).transpose()},
                      tol);
    }
    case Variant::HT: {
      auto [h, t] = ht_core(x, variant, tol);
      return assemble(x, variant, {std::move(h), std::move(t)}, tol);
    }
    case Variant::TH: {
      auto [h, t] = ht_core(x.transpose(), variant, tol);
      return assemble(x, variant, {t.transpose(), h.transpose()}, tol);
    }
    case Variant::RDS: {
      auto [h, t] = ht_core(x, variant, tol);
      const Matrix z = swap_matrix(n);
      return assemble(x, variant, {-h * j, z * t}, tol);
    }
    case Variant::SDR: {
      auto [h, t] = ht_core(x.transpose(), variant, tol);
      const Matrix z = swap_matrix(n);
      return assemble(x, variant,
                      {(z * t).transpose(), (-h * j).transpose()}, tol);
    }
  }
  throw Error("unhandled variant");
}

VerifyReport verify(const Matrix& x, const Factorization& f,
                    const TolerancePolicy& tol) {
  mode_count(x);
  if (f.factors.size() != 2)
    throw DimensionMismatch("a factorization carries exactly two stored factors");
  for (const Matrix& factor : f.factors)
    if (factor.rows() != x.rows() || factor.cols() != x.cols())
      throw DimensionMismatch("factor dimensions do not match the input");

  VerifyReport report;
  const auto kinds = variant_factor_kinds(f.variant);
  bool ok = true;
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    const StructureCheck check = check_structure(f.factors[i], kinds[i], tol);
    report.structure_report.push_back({kinds[i], check.residual, check.holds});
    ok = ok && check.holds;
  }
  const double raw = (variant_product(f.variant, f.factors) - x).norm();
  report.reconstruction_residual = raw / (1.0 + x.norm());
  ok = ok && tol.accepts(raw, x.norm());
  report.ok = ok;
  return report;
}

}  // namespace sympolar
