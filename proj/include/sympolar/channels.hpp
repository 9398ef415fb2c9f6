#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sympolar/matrix_functions.hpp"
#include "sympolar/polar.hpp"

namespace sympolar {

/// Bosonic Gaussian channel triple (K, l, alpha) with alpha symmetric.  A
/// triple is valid when the Hermitian matrix
/// alpha - (i/2) (J - K^T J K) is non-negative definite.
struct GaussianChannelTriple {
  Matrix k;
  Vector l;
  Matrix alpha;
};

/// Mode count shared by K, l and alpha; throws on disagreement.
Index channel_mode_count(const GaussianChannelTriple& c);

/// Identity channel (I, 0, 0).
GaussianChannelTriple identity_channel(Index n);

struct ChannelValidity {
  bool valid = false;
  double min_eigenvalue = 0.0;
};

ChannelValidity validate_channel(const GaussianChannelTriple& c,
                                 const TolerancePolicy& tol = {});

/// Monoid product: (K2,l2,a2)(K1,l1,a1) = (K1 K2, K2^T l1 + l2,
/// K2^T a1 K2 + a2).  Valid triples compose to valid triples.
GaussianChannelTriple compose(const GaussianChannelTriple& c2,
                              const GaussianChannelTriple& c1);

/// Williamson form of a symmetric positive definite alpha: symplectic S
/// with S^T alpha S = Lambda = diag(nu_1..nu_n, nu_1..nu_n), nu sorted
/// descending.  The nu_i are the moduli of the eigenvalues of J alpha.
struct WilliamsonForm {
  Matrix s;
  Matrix lambda;
  Vector nu;  // length n, descending
};

WilliamsonForm williamson(const Matrix& alpha, const TolerancePolicy& tol = {});

/// The three canonical shapes of Theorem-style channel reduction: K brought
/// to D R (R symmetric), A (skew-symmetric) or D A.
enum class ChannelCase { DRForm, AForm, DAForm };

const char* to_string(ChannelCase c);
std::optional<ChannelCase> channel_case_from_string(std::string_view name);

struct ChannelClassification {
  EigenClassification classification;  // of -K^T J K J
  double det_k = 0.0;
  bool dr_admissible = false;
  bool a_admissible = false;
  bool da_admissible = false;

  [[nodiscard]] std::vector<ChannelCase> admissible_cases() const;
};

/// DRForm is admissible iff det K != 0; AForm additionally needs no
/// negative real eigenvalues of -K^T J K J, DAForm no positive ones.  For
/// n = 1, -K^T J K J = det(K) I_2 exactly, so exactly one of AForm/DAForm
/// is admissible for nondegenerate K.
ChannelClassification classify_channel(const Matrix& k,
                                       const TolerancePolicy& tol = {});

/// An inhomogeneous symplectic transformation (S, h, 0).
struct InhomogeneousSymplectic {
  Matrix s;
  Vector h;

  [[nodiscard]] GaussianChannelTriple as_channel() const {
    return {s, h, Matrix::Zero(s.rows(), s.cols())};
  }
};

struct ChannelNormalForm {
  ChannelCase form;
  InhomogeneousSymplectic left;    // (S2, h2), applied on the left
  InhomogeneousSymplectic right;   // (S1, h1), applied on the right
  GaussianChannelTriple canonical; // l = 0, alpha diagonal
  Matrix core_factor;              // the R or A matrix of the canonical K
  double reconstruction_residual = 0.0;
};

/// Reduces a channel with det K != 0 to its canonical form:
/// compose(left, compose(c, right)) == canonical.  The requested case must
/// be admissible per classify_channel; with no request the preference order
/// is AForm, DAForm, DRForm.  alpha must be positive definite, zero, or
/// already diagonal.
ChannelNormalForm normal_form(const GaussianChannelTriple& c,
                              std::optional<ChannelCase> requested = {},
                              const TolerancePolicy& tol = {});

/// Dimension bookkeeping for 2n x 2n matrices: a general matrix has 4n^2
/// parameters, a symplectic one n(2n+1), so the canonical core carries
/// n(2n-1) -- the parameter count of a skew-symmetric matrix.
struct ParameterCounts {
  long long general = 0;
  long long symplectic = 0;
  long long canonical_core = 0;
  long long skew_symmetric = 0;
  long long symmetric = 0;
};

ParameterCounts parameter_counts(Index n);

}  // namespace sympolar
