#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "sympolar/core.hpp"
#include "sympolar/structured_roots.hpp"

namespace sympolar {

/// The twelve symplectic polar-decomposition variants.  Letters name the
/// factors left to right: H Hamiltonian, T anti-symplectic, R symmetric,
/// S symplectic, M skew-Hamiltonian, A skew-symmetric, D the signature
/// matrix diag(I, -I) (never stored, inserted implicitly by position).
enum class Variant { HT, TH, RDS, SDR, MS, AS, MDS, ADS, SM, SA, SDM, SDA };

const char* to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view name);
constexpr std::array<Variant, 12> all_variants{
    Variant::HT,  Variant::TH,  Variant::RDS, Variant::SDR,
    Variant::MS,  Variant::AS,  Variant::MDS, Variant::ADS,
    Variant::SM,  Variant::SA,  Variant::SDM, Variant::SDA};

/// True when the variant's product carries an implicit D between its two
/// stored factors.
bool variant_has_signature_factor(Variant v);

/// Structure class required of each stored factor, in product order.
std::array<StructureKind, 2> variant_factor_kinds(Variant v);

/// Product of the stored factors with D inserted where the variant
/// prescribes it.
Matrix variant_product(Variant v, const std::vector<Matrix>& factors);

struct FactorReport {
  StructureKind kind;
  double residual = 0.0;
  bool holds = false;
};

struct Factorization {
  Variant variant;
  std::vector<Matrix> factors;  // two entries, paper product order
  std::vector<FactorReport> structure_report;
  double reconstruction_residual = 0.0;  // |product - X|_F / (1 + |X|_F)
};

/// Decomposes X into the requested variant.  Preconditions per variant:
/// the HT family (HT, TH, RDS, SDR) needs det X != 0 and an eigen-generic
/// associated matrix; the MS family needs the sign condition on the real
/// eigenvalues of -X J X^T J (right-sided variants) or -X^T J X J
/// (left-sided variants).
Factorization decompose(const Matrix& x, Variant variant,
                        const TolerancePolicy& tol = {});

struct VerifyReport {
  bool ok = false;
  double reconstruction_residual = 0.0;
  std::vector<FactorReport> structure_report;
};

/// Recomputes every residual of a factorization from scratch; never trusts
/// the residuals stored in it.
VerifyReport verify(const Matrix& x, const Factorization& f,
                    const TolerancePolicy& tol = {});

}  // namespace sympolar
