#pragma once

#include <cstdint>
#include <random>

#include "sympolar/channels.hpp"
#include "sympolar/types.hpp"

namespace sympolar {

/// Deterministic random stream.  mt19937_64 raw output is standardized, and
/// uniform/normal are derived from it with an explicit Box-Muller transform,
/// so a given seed produces the same values on every platform and standard
/// library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();                       // standard normal

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Matrix random_matrix(Index rows, Index cols, RandomStream& rng);

/// Random 2n x 2n matrix resampled until its condition number is at most
/// max_condition.
Matrix random_nondegenerate(Index n, RandomStream& rng,
                            double max_condition = 1e6);

/// Product of elementary symplectic factors (block triangular with
/// symmetric off-diagonal blocks, block diagonal diag(A, A^{-T}), and J),
/// resampled until the symplectic residual is at most 1e-12.
Matrix random_symplectic(Index n, RandomStream& rng);

/// Block form [[A, B], [C, A^T]] with B, C skew-symmetric: exactly
/// skew-Hamiltonian by construction.
Matrix random_skew_hamiltonian(Index n, RandomStream& rng);

/// Symmetric positive definite 2n x 2n matrix with eigenvalues log-uniform
/// in [lo, hi].
Matrix random_spd(Index n, RandomStream& rng, double lo = 0.4, double hi = 2.5);

/// Random valid channel: draw K nondegenerate and B = G^T G, then
/// alpha = B + c I with c chosen from the minimal eigenvalue of
/// B - (i/2)(J - K^T J K) plus a 1e-6 margin, which guarantees validity and
/// alpha positive definite.
GaussianChannelTriple random_valid_channel(Index n, RandomStream& rng);

}  // namespace sympolar
