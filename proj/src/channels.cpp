#include "sympolar/channels.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sympolar {

Index channel_mode_count(const GaussianChannelTriple& c) {
  const Index n = mode_count(c.k);
  if (c.l.size() != 2 * n)
    throw DimensionMismatch("l must have length 2n = " + std::to_string(2 * n) +
                            ", got " + std::to_string(c.l.size()));
  if (c.alpha.rows() != 2 * n || c.alpha.cols() != 2 * n)
    throw DimensionMismatch("alpha must be 2n x 2n");
  if (!c.l.allFinite() || !c.alpha.allFinite())
    throw InvalidDimension("channel entries must be finite");
  return n;
}

GaussianChannelTriple identity_channel(Index n) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  return {Matrix::Identity(2 * n, 2 * n), Vector::Zero(2 * n),
          Matrix::Zero(2 * n, 2 * n)};
}

namespace {

void require_symmetric_alpha(const Matrix& alpha, const TolerancePolicy& tol) {
  const double asym = (alpha - alpha.transpose()).norm();
  if (asym > tol.rel_tol * (1.0 + alpha.norm()))
    throw AsymmetricAlpha("alpha fails the symmetry check (residual " +
                          std::to_string(asym) + ")");
}

}  // namespace

ChannelValidity validate_channel(const GaussianChannelTriple& c,
                                 const TolerancePolicy& tol) {
  const Index n = channel_mode_count(c);
  require_symmetric_alpha(c.alpha, tol);
  const Matrix j = symplectic_form(n);
  const Matrix skew = j - c.k.transpose() * j * c.k;
  const ComplexMatrix hermitian =
      c.alpha.cast<Complex>() - Complex(0.0, 0.5) * skew.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian,
                                                      Eigen::EigenvaluesOnly);
  const double min_eigenvalue = solver.eigenvalues().minCoeff();
  const double knorm = c.k.norm();
  const bool valid = min_eigenvalue >=
                     -tol.rel_tol * (1.0 + c.alpha.norm() + knorm * knorm);
  return {valid, min_eigenvalue};
}

GaussianChannelTriple compose(const GaussianChannelTriple& c2,
                              const GaussianChannelTriple& c1) {
  const Index n2 = channel_mode_count(c2);
  const Index n1 = channel_mode_count(c1);
  if (n1 != n2)
    throw DimensionMismatch("cannot compose channels with different mode counts");
  return {c1.k * c2.k, c2.k.transpose() * c1.l + c2.l,
          c2.k.transpose() * c1.alpha * c2.k + c2.alpha};
}

WilliamsonForm williamson(const Matrix& alpha, const TolerancePolicy& tol) {
  const Index n = mode_count(alpha);
  const Index k = 2 * n;
  require_symmetric_alpha(alpha, tol);

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (alpha + alpha.transpose()));
  const Vector evals = es.eigenvalues();
  if (evals.minCoeff() <= tol.rel_tol * std::max(evals.maxCoeff(), 0.0))
    throw PreconditionViolated(FailedPrecondition::NotPositiveDefinite,
                               "alpha must be positive definite (minimal "
                               "eigenvalue " + std::to_string(evals.minCoeff()) + ")");

  const Matrix sqrt_alpha =
      es.eigenvectors() * evals.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  const Matrix inv_sqrt_alpha = es.eigenvectors() *
                                evals.cwiseSqrt().cwiseInverse().asDiagonal() *
                                es.eigenvectors().transpose();

  const Matrix j = symplectic_form(n);
  Matrix w = sqrt_alpha * j * sqrt_alpha;
  w = 0.5 * (w - w.transpose());  // exact skew-symmetry

  const RealSchurForm schur = real_schur(w);
  const Matrix& t = schur.t;

  struct ModePair {
    double nu;
    Index q_col;
    Index p_col;
  };
  std::vector<ModePair> modes;
  for (Index i = 0; i < k;) {
    if (i + 1 >= k || t(i + 1, i) == 0.0)
      throw PreconditionViolated(
          FailedPrecondition::NotPositiveDefinite,
          "skew reduction produced a real eigenvalue; alpha is singular at "
          "working precision");
    const double det = t(i, i) * t(i + 1, i + 1) - t(i, i + 1) * t(i + 1, i);
    const double nu = std::sqrt(std::max(det, 0.0));
    if (t(i, i + 1) < 0.0)
      modes.push_back({nu, i, i + 1});
    else
      modes.push_back({nu, i + 1, i});
    i += 2;
  }

  std::stable_sort(modes.begin(), modes.end(),
                   [](const ModePair& a, const ModePair& b) { return a.nu > b.nu; });

  // Column order (q_1..q_n, p_1..p_n) makes Q^T W Q = [[0, -Dnu], [Dnu, 0]];
  // S = alpha^{-1/2} Q Lambda^{1/2} is then symplectic with S^T alpha S = Lambda.
  Matrix ordered(k, k);
  Vector nu(n);
  for (Index m = 0; m < n; ++m) {
    nu(m) = modes[m].nu;
    ordered.col(m) = schur.q.col(modes[m].q_col);
    ordered.col(n + m) = schur.q.col(modes[m].p_col);
  }

  Matrix s = inv_sqrt_alpha * ordered;
  for (Index m = 0; m < n; ++m) {
    const double scale = std::sqrt(nu(m));
    s.col(m) *= scale;
    s.col(n + m) *= scale;
  }

  Matrix lambda = Matrix::Zero(k, k);
  for (Index m = 0; m < n; ++m) {
    lambda(m, m) = nu(m);
    lambda(n + m, n + m) = nu(m);
  }

  const double diag_residual = (s.transpose() * alpha * s - lambda).norm();
  const double symp_residual = (s * j * s.transpose() - j).norm();
  const double gate = std::max(tol.rel_tol, 1e-10);
  if (diag_residual > gate * (1.0 + alpha.norm()) * (1.0 + s.squaredNorm()) ||
      symp_residual > gate * (1.0 + s.squaredNorm()))
    throw NonConvergence("williamson reduction failed verification");

  return {s, lambda, nu};
}

const char* to_string(ChannelCase c) {
  switch (c) {
    case ChannelCase::DRForm: return "dr";
    case ChannelCase::AForm: return "a";
    case ChannelCase::DAForm: return "da";
  }
  return "unknown";
}

std::optional<ChannelCase> channel_case_from_string(std::string_view name) {
  if (name == "dr") return ChannelCase::DRForm;
  if (name == "a") return ChannelCase::AForm;
  if (name == "da") return ChannelCase::DAForm;
  return std::nullopt;
}

std::vector<ChannelCase> ChannelClassification::admissible_cases() const {
  std::vector<ChannelCase> cases;
  if (dr_admissible) cases.push_back(ChannelCase::DRForm);
  if (a_admissible) cases.push_back(ChannelCase::AForm);
  if (da_admissible) cases.push_back(ChannelCase::DAForm);
  return cases;
}

ChannelClassification classify_channel(const Matrix& k, const TolerancePolicy& tol) {
  mode_count(k);
  ChannelClassification result;
  result.classification =
      classify_real_eigenvalues(associated_skew_hamiltonian_left(k), tol);
  result.det_k = determinant(k);
  const bool nondegenerate = !is_degenerate(k, tol);
  result.dr_admissible = nondegenerate;
  result.a_admissible = nondegenerate && !result.classification.has_zero &&
                        !result.classification.has_negative_real;
  result.da_admissible = nondegenerate && !result.classification.has_zero &&
                         !result.classification.has_positive_real;
  return result;
}

namespace {

std::string inadmissible_message(ChannelCase requested,
                                 const ChannelClassification& cc) {
  std::ostringstream msg;
  msg << "case " << to_string(requested) << " is inadmissible: -K^T J K J has";
  if (requested == ChannelCase::AForm) msg << " negative";
  if (requested == ChannelCase::DAForm) msg << " positive";
  msg << " real eigenvalues:";
  for (double ev : cc.classification.real_eigenvalues) {
    if (requested == ChannelCase::AForm && ev >= 0.0) continue;
    if (requested == ChannelCase::DAForm && ev <= 0.0) continue;
    msg << ' ' << ev;
  }
  return msg.str();
}

}  // namespace

ChannelNormalForm normal_form(const GaussianChannelTriple& c,
                              std::optional<ChannelCase> requested,
                              const TolerancePolicy& tol) {
  const Index n = channel_mode_count(c);
  const Index k2 = 2 * n;
  require_symmetric_alpha(c.alpha, tol);

  const ChannelClassification cc = classify_channel(c.k, tol);
  if (!cc.dr_admissible)
    throw PreconditionViolated(FailedPrecondition::Degenerate,
                               "normal form requires det K != 0");

  ChannelCase form;
  if (requested) {
    form = *requested;
    const bool ok = (form == ChannelCase::DRForm && cc.dr_admissible) ||
                    (form == ChannelCase::AForm && cc.a_admissible) ||
                    (form == ChannelCase::DAForm && cc.da_admissible);
    if (!ok)
      throw PreconditionViolated(FailedPrecondition::CaseInadmissible,
                                 inadmissible_message(form, cc));
  } else {
    form = cc.a_admissible    ? ChannelCase::AForm
           : cc.da_admissible ? ChannelCase::DAForm
                              : ChannelCase::DRForm;
  }

  // Williamson stage: alpha = 0 and already-diagonal alpha bypass the
  // reduction so that purely symplectic channels normalize too.
  Matrix s2;
  Matrix lambda;
  const double alpha_norm = c.alpha.norm();
  const double offdiag =
      (c.alpha - Matrix(c.alpha.diagonal().asDiagonal())).norm();
  if (alpha_norm <= tol.rel_tol) {
    s2 = Matrix::Identity(k2, k2);
    lambda = Matrix::Zero(k2, k2);
  } else if (offdiag <= tol.rel_tol * (1.0 + alpha_norm)) {
    s2 = Matrix::Identity(k2, k2);
    lambda = c.alpha.diagonal().asDiagonal();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        0.5 * (c.alpha + c.alpha.transpose()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <=
        tol.rel_tol * std::max(es.eigenvalues().maxCoeff(), 0.0))
      throw PreconditionViolated(
          FailedPrecondition::NotPositiveDefinite,
          "alpha is singular, nonzero and nondiagonal; the diagonalizing "
          "transform is not defined for this case");
    const WilliamsonForm wf = williamson(c.alpha, tol);
    s2 = wf.s;
    lambda = wf.lambda;
  }

  const Matrix x = c.k * s2;
  Variant variant;
  switch (form) {
    case ChannelCase::DRForm: variant = Variant::SDR; break;
    case ChannelCase::AForm: variant = Variant::SA; break;
    case ChannelCase::DAForm: variant = Variant::SDA; break;
  }
  const Factorization f = decompose(x, variant, tol);
  const Matrix& s = f.factors[0];
  const Matrix& core = f.factors[1];
  const Matrix s1 = Eigen::PartialPivLU<Matrix>(s).inverse();

  Matrix canonical_k;
  if (form == ChannelCase::AForm)
    canonical_k = core;
  else
    canonical_k = signature_matrix(n) * core;

  // Translations: h1 absorbs l through K^T, h2 stays zero.
  const Vector h1 = Eigen::PartialPivLU<Matrix>(c.k.transpose()).solve(-c.l);
  const Vector h2 = Vector::Zero(k2);

  ChannelNormalForm result;
  result.form = form;
  result.left = {s2, h2};
  result.right = {s1, h1};
  result.canonical = {canonical_k, Vector::Zero(k2), lambda};
  result.core_factor = core;

  const GaussianChannelTriple reconstructed =
      compose(result.left.as_channel(), compose(c, result.right.as_channel()));
  const double rk =
      (reconstructed.k - canonical_k).norm() / (1.0 + canonical_k.norm());
  const double rl = reconstructed.l.norm() / (1.0 + c.l.norm());
  const double ra = (reconstructed.alpha - lambda).norm() / (1.0 + lambda.norm());
  result.reconstruction_residual = std::max({rk, rl, ra});
  return result;
}

ParameterCounts parameter_counts(Index n) {
  if (n < 1) throw InvalidDimension("mode count must be at least 1");
  const long long nn = n;
  return {4 * nn * nn, nn * (2 * nn + 1), nn * (2 * nn - 1), nn * (2 * nn - 1),
          nn * (2 * nn + 1)};
}

}  // namespace sympolar
