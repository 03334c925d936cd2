#ifndef SUTHERLAX_SAMPLING_HPP
#define SUTHERLAX_SAMPLING_HPP

#include <cstdint>

#include "sutherlax/liealg.hpp"
#include "sutherlax/model.hpp"

namespace sutherlax {

/// Counter-based deterministic RNG: every (seed, stream, counter) triple maps
/// to one output word, so parallel sample streams stay reproducible.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : base_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next_u64() { return mix(base_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  /// Uniform on [0, 1).
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

/// Random chamber point with all wall distances at least `gap`.
inline PhasePoint random_point(int n, RngStream& rng, double gap = 0.1, double pmax = 1.0) {
  RealVector q(n), p(n);
  double level = rng.uniform(gap, gap + 1.0);
  for (int c = n - 1; c >= 0; --c) {
    q[c] = level;
    level += rng.uniform(gap, gap + 1.0);
  }
  for (int c = 0; c < n; ++c) p[c] = rng.uniform(-pmax, pmax);
  return {q, p};
}

/// Couplings with |mu|, |nu| in [0.5, 2] and kappa in [-1, 1], retried until
/// the g1^2 > -g2^2/4 constraint holds.
inline CouplingParams random_couplings(RngStream& rng) {
  for (;;) {
    const double mu = (rng.next_u64() & 1 ? 1.0 : -1.0) * rng.uniform(0.5, 2.0);
    const double nu = (rng.next_u64() & 1 ? 1.0 : -1.0) * rng.uniform(0.5, 2.0);
    const double kappa = rng.uniform(-1.0, 1.0);
    const double g1sq = 0.5 * nu * kappa, g2sq = 0.5 * (nu - kappa) * (nu - kappa);
    if (g1sq > -0.25 * g2sq) return make_couplings(mu, nu, kappa);
  }
}

/// Random element of u(n,n) with O(1) entries.
inline CMatrix random_algebra_element(const BasisSet& basis, RngStream& rng) {
  CMatrix Y = CMatrix::Zero(2 * basis.n(), 2 * basis.n());
  for (const CMatrix& T : basis.elements()) Y += rng.uniform(-1.0, 1.0) * T;
  return Y;
}

/// Random element of k (anti-Hermitian, C-commuting).
inline CMatrix random_k_element(const BasisSet& basis, RngStream& rng) {
  const int n = basis.n();
  CMatrix Y = CMatrix::Zero(2 * n, 2 * n);
  for (int A = 0; A < basis.dim(); ++A) {
    const CMatrix& T = basis.elements()[A];
    if (max_abs(T + T.adjoint()) < kStructuralTol)  // k-part of the basis
      Y += rng.uniform(-1.0, 1.0) * T;
  }
  return Y;
}

}  // namespace sutherlax

#endif
