#ifndef SUTHERLAX_MODEL_HPP
#define SUTHERLAX_MODEL_HPP

#include <cmath>

#include "sutherlax/liealg.hpp"

namespace sutherlax {

/// Parameters (mu, nu, kappa) of the reduction together with the derived
/// Sutherland couplings g^2 = mu^2, g1^2 = nu*kappa/2, g2^2 = (nu-kappa)^2/2.
struct CouplingParams {
  double mu, nu, kappa;
  double g2, g1sq, g2sq;
};

inline CouplingParams make_couplings(double mu, double nu, double kappa) {
  if (mu == 0.0 || nu == 0.0)
    throw std::invalid_argument("make_couplings: mu and nu must be non-zero");
  CouplingParams c;
  c.mu = mu;
  c.nu = nu;
  c.kappa = kappa;
  c.g2 = mu * mu;
  c.g1sq = 0.5 * nu * kappa;
  c.g2sq = 0.5 * (nu - kappa) * (nu - kappa);
  if (!(c.g1sq > -0.25 * c.g2sq))
    throw std::invalid_argument("make_couplings: couplings violate g1^2 > -g2^2/4");
  return c;
}

/// Point of the phase space: q in the open Weyl chamber, p unrestricted.
struct PhasePoint {
  RealVector q, p;

  int n() const { return static_cast<int>(q.size()); }
};

inline PhasePoint make_point(const RealVector& q, const RealVector& p) {
  if (q.size() != p.size() || q.size() == 0)
    throw std::invalid_argument("make_point: q and p must have equal positive length");
  require_chamber(q, "make_point");
  return {q, p};
}

inline double sinh2(double x) { const double s = std::sinh(x); return s * s; }

/// H^S: kinetic term plus the sinh^-2 pair, image-pair and boundary potentials.
inline double hamiltonian(const PhasePoint& x, const CouplingParams& c) {
  require_chamber(x.q, "hamiltonian");
  const int n = x.n();
  double H = 0.5 * x.p.squaredNorm();
  for (int i = 0; i < n; ++i)
    H += c.g1sq / sinh2(x.q[i]) + c.g2sq / sinh2(2.0 * x.q[i]);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      H += c.g2 / sinh2(x.q[a] - x.q[b]) + c.g2 / sinh2(x.q[a] + x.q[b]);
  return H;
}

/// Analytic gradient dH/dq; cosh/sinh^3 is odd so the pair sum runs over d != c.
inline RealVector hamiltonian_dq(const PhasePoint& x, const CouplingParams& c) {
  require_chamber(x.q, "hamiltonian_dq");
  const int n = x.n();
  auto kernel = [](double v) { return std::cosh(v) / (sinh2(v) * std::sinh(v)); };
  RealVector dH = RealVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    dH[i] = -2.0 * c.g1sq * kernel(x.q[i]) - 4.0 * c.g2sq * kernel(2.0 * x.q[i]);
    for (int d = 0; d < n; ++d) {
      if (d == i) continue;
      dH[i] -= 2.0 * c.g2 * (kernel(x.q[i] - x.q[d]) + kernel(x.q[i] + x.q[d]));
    }
  }
  return dH;
}

/// Lax matrix split into its Hermitian part and the central -kappa*i*C piece.
struct LaxMatrix {
  CMatrix value;
  CMatrix hermitian_part;
  CMatrix central_part;
};

/// L = [[A, B], [-B, -A]] - kappa i C with the sinh kernel entries.
inline LaxMatrix lax_matrix(const PhasePoint& x, const CouplingParams& c) {
  require_chamber(x.q, "lax_matrix");
  const int n = x.n();
  CMatrix A = CMatrix::Zero(n, n), B = CMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    A(a, a) = x.p[a];
    B(a, a) = kI * (c.nu + c.kappa * std::cosh(2.0 * x.q[a])) / std::sinh(2.0 * x.q[a]);
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      A(a, b) = -kI * c.mu / std::sinh(x.q[a] - x.q[b]);
      B(a, b) = kI * c.mu / std::sinh(x.q[a] + x.q[b]);
    }
  }
  LaxMatrix L;
  L.hermitian_part = CMatrix::Zero(2 * n, 2 * n);
  L.hermitian_part.topLeftCorner(n, n) = A;
  L.hermitian_part.topRightCorner(n, n) = B;
  L.hermitian_part.bottomLeftCorner(n, n) = -B;
  L.hermitian_part.bottomRightCorner(n, n) = -A;
  L.central_part = -c.kappa * kI * build_C(n);
  L.value = L.hermitian_part + L.central_part;
  return L;
}

/// Same Lax matrix assembled from the orthonormal basis expansion.
inline LaxMatrix lax_via_basis(const PhasePoint& x, const CouplingParams& c,
                               const BasisSet& basis) {
  require_chamber(x.q, "lax_via_basis");
  const int n = x.n();
  const double rt2 = std::sqrt(2.0);
  CMatrix V = CMatrix::Zero(2 * n, 2 * n);
  for (int i = 1; i <= n; ++i) {
    V += rt2 * x.p[i - 1] * basis.Dminus(i);
    const double w =
        (c.nu + c.kappa * std::cosh(2.0 * x.q[i - 1])) / std::sinh(2.0 * x.q[i - 1]);
    V -= rt2 * w * basis.X(root_double(i), -1, 'i');
  }
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      V -= 2.0 * c.mu * basis.X(root_diff(a, b), -1, 'i') / std::sinh(x.q[a - 1] - x.q[b - 1]);
      V -= 2.0 * c.mu * basis.X(root_sum(a, b), -1, 'i') / std::sinh(x.q[a - 1] + x.q[b - 1]);
    }
  LaxMatrix L;
  L.central_part = -c.kappa * kI * build_C(n);
  L.hermitian_part = V;
  L.value = V + L.central_part;
  return L;
}

/// Dynamical r-matrix r_12(q) as a g (x) g tensor.
struct RMatrix {
  int n;
  Tensor tensor;
};

namespace detail {

inline Tensor r_dynamical_tensor(const RealVector& q, const BasisSet& basis) {
  const int N = 2 * basis.n();
  Tensor r = Tensor::Zero(N * N, N * N);
  for (const RootLabel& alpha : basis.roots()) {
    const double aq = root_value(alpha, q);
    for (char part : BasisSet::parts(alpha))
      r += 2.0 * (std::cosh(aq) / std::sinh(aq)) *
           kron(basis.X(alpha, +1, part), basis.X(alpha, -1, part));
    r -= (2.0 / std::sinh(aq)) * kron(basis.Z(alpha), basis.X(alpha, -1, 'i'));
  }
  return r;
}

inline Tensor r_constant_tensor(const BasisSet& basis) {
  const int N = 2 * basis.n();
  Tensor r = Tensor::Zero(N * N, N * N);
  for (int c = 1; c <= basis.n(); ++c) {
    r -= kron(basis.Dplus(c), basis.Dplus(c));
    r -= kron(basis.Dminus(c), basis.Dminus(c));
  }
  for (const RootLabel& alpha : basis.roots())
    for (char part : BasisSet::parts(alpha)) {
      r -= kron(basis.X(alpha, +1, part), basis.X(alpha, +1, part));
      r -= kron(basis.X(alpha, -1, part), basis.X(alpha, -1, part));
    }
  return r;
}

}  // namespace detail

/// r_12(q) in the adapted basis (Theorem 3.1 form).
inline RMatrix r_matrix_basis(const RealVector& q, const BasisSet& basis) {
  require_chamber(q, "r_matrix_basis");
  return {basis.n(), detail::r_dynamical_tensor(q, basis) + detail::r_constant_tensor(basis)};
}

/// Only the two q-dependent sums of r_12(q).
inline RMatrix r_dynamical_part(const RealVector& q, const BasisSet& basis) {
  require_chamber(q, "r_dynamical_part");
  return {basis.n(), detail::r_dynamical_tensor(q, basis)};
}

/// r_12(q) written out in elementary matrices e_{k,l}; independent of the
/// adapted basis machinery.
inline RMatrix r_matrix_standard(const RealVector& q) {
  require_chamber(q, "r_matrix_standard");
  const int n = static_cast<int>(q.size());
  const int N = 2 * n;
  using detail::unit;
  Tensor r = Tensor::Zero(N * N, N * N);
  auto coth = [](double v) { return std::cosh(v) / std::sinh(v); };
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      if (a != b) {
        r += coth(q[a - 1] - q[b - 1]) *
             kron(unit(N, a, b) + unit(N, n + a, n + b),
                  unit(N, b, a) - unit(N, n + b, n + a));
        r += (0.5 / std::sinh(q[a - 1] - q[b - 1])) *
             kron(unit(N, a, a) + unit(N, n + a, n + a) + unit(N, b, b) + unit(N, n + b, n + b),
                  unit(N, a, b) - unit(N, n + a, n + b));
      }
      r += coth(q[a - 1] + q[b - 1]) *
           kron(unit(N, a, n + b) + unit(N, n + a, b),
                unit(N, n + b, a) - unit(N, b, n + a));
      r -= (0.5 / std::sinh(q[a - 1] + q[b - 1])) *
           kron(unit(N, a, a) + unit(N, n + a, n + a) + unit(N, b, b) + unit(N, n + b, n + b),
                unit(N, a, n + b) - unit(N, n + a, b));
      r += kron(unit(N, a, b), unit(N, n + b, n + a)) +
           kron(unit(N, n + a, n + b), unit(N, b, a)) +
           kron(unit(N, a, n + b), unit(N, b, n + a)) +
           kron(unit(N, n + a, b), unit(N, n + b, a));
    }
  return {n, r};
}

/// R(q) Y, the End(g) avatar of r_12(q), in closed form.
inline CMatrix R_apply(const RealVector& q, const CMatrix& Y, const BasisSet& basis) {
  require_chamber(q, "R_apply");
  require_algebra(Y, "R_apply");
  CMatrix out = -Y.adjoint();
  for (const RootLabel& alpha : basis.roots()) {
    const double aq = root_value(alpha, q);
    for (char part : BasisSet::parts(alpha))
      out += 2.0 * (std::cosh(aq) / std::sinh(aq)) * bilinear(basis.X(alpha, -1, part), Y) *
             basis.X(alpha, +1, part);
    out -= (2.0 / std::sinh(aq)) * bilinear(basis.X(alpha, -1, 'i'), Y) * basis.Z(alpha);
  }
  return out;
}

/// R(q) Y through the partial trace route tr_2(r_12(q) (1 (x) Y)).
inline CMatrix R_apply_via_trace(const RMatrix& r, const CMatrix& Y) {
  const int N = static_cast<int>(Y.rows());
  return partial_trace_2(r.tensor * kron(CMatrix::Identity(N, N), Y));
}

/// k-valued Lax partner with block structure [[S, T], [T, S]].
struct BMatrix {
  CMatrix value;
  CMatrix S, T;
};

/// B from the closed-form S and T entries; depends on q only.
inline BMatrix b_matrix_closed(const RealVector& q, const CouplingParams& c) {
  require_chamber(q, "b_matrix_closed");
  const int n = static_cast<int>(q.size());
  CMatrix S = CMatrix::Zero(n, n), T = CMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    const double q2 = 2.0 * q[a];
    T(a, a) = kI * (c.nu * std::cosh(q2) + c.kappa) / sinh2(q2);
    S(a, a) = kI * (c.nu + c.kappa * std::cosh(q2)) / sinh2(q2);
    for (int d = 0; d < n; ++d) {
      if (d == a) continue;
      S(a, a) += kI * c.mu * (1.0 / sinh2(q[a] - q[d]) + 1.0 / sinh2(q[a] + q[d]));
      S(a, d) = -kI * c.mu * std::cosh(q[a] - q[d]) / sinh2(q[a] - q[d]);
      T(a, d) = kI * c.mu * std::cosh(q[a] + q[d]) / sinh2(q[a] + q[d]);
    }
  }
  BMatrix B;
  B.S = S;
  B.T = T;
  B.value = CMatrix::Zero(2 * n, 2 * n);
  B.value.topLeftCorner(n, n) = S;
  B.value.topRightCorner(n, n) = T;
  B.value.bottomLeftCorner(n, n) = T;
  B.value.bottomRightCorner(n, n) = S;
  return B;
}

/// B = (L + R(q) L) / 2; the p-dependence cancels between the two terms.
inline BMatrix b_matrix_operator(const PhasePoint& x, const CouplingParams& c,
                                 const BasisSet& basis) {
  const CMatrix L = lax_matrix(x, c).value;
  const CMatrix V = 0.5 * (L + R_apply(x.q, L, basis));
  const int n = x.n();
  BMatrix B;
  B.value = V;
  B.S = V.topLeftCorner(n, n);
  B.T = V.topRightCorner(n, n);
  return B;
}

/// Dual-construction B: closed-form entries cross-checked against (L + RL)/2.
inline BMatrix b_matrix(const RealVector& q, const CouplingParams& c, const BasisSet& basis,
                        double tol = kStructuralTol) {
  BMatrix closed = b_matrix_closed(q, c);
  PhasePoint x{q, RealVector::Zero(q.size())};
  BMatrix op = b_matrix_operator(x, c, basis);
  if (max_abs(closed.value - op.value) > tol)
    throw std::runtime_error("b_matrix: closed-form and operator constructions disagree");
  return closed;
}

/// Closed form of [B, L] (all terms carry X^{-,i} or D^- directions).
inline CMatrix bl_commutator_closed(const PhasePoint& x, const CouplingParams& c,
                                    const BasisSet& basis) {
  require_chamber(x.q, "bl_commutator_closed");
  const int n = x.n();
  const double rt2 = std::sqrt(2.0);
  CMatrix out = CMatrix::Zero(2 * n, 2 * n);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      const double dm = x.q[a - 1] - x.q[b - 1], dp = x.q[a - 1] + x.q[b - 1];
      out += 2.0 * c.mu * (x.p[a - 1] - x.p[b - 1]) * std::cosh(dm) / sinh2(dm) *
             basis.X(root_diff(a, b), -1, 'i');
      out += 2.0 * c.mu * (x.p[a - 1] + x.p[b - 1]) * std::cosh(dp) / sinh2(dp) *
             basis.X(root_sum(a, b), -1, 'i');
    }
  const RealVector dH = hamiltonian_dq(x, c);
  for (int i = 1; i <= n; ++i) {
    const double q2 = 2.0 * x.q[i - 1];
    out += 2.0 * rt2 * x.p[i - 1] * (c.nu * std::cosh(q2) + c.kappa) / sinh2(q2) *
           basis.X(root_double(i), -1, 'i');
    out -= rt2 * dH[i - 1] * basis.Dminus(i);
  }
  return out;
}

/// Both sides of the cosh/sinh^2 identity used in the proof of the Lax
/// equation; exposed as a self-test utility.
inline std::pair<double, double> hyperbolic_identity(double x, double y) {
  if (x == 0.0 || y == 0.0 || x + y == 0.0)
    throw std::domain_error("hyperbolic_identity: singular arguments");
  const double lhs = std::cosh(x) / sinh2(x) / std::sinh(y) -
                     std::cosh(y) / sinh2(y) / std::sinh(x);
  const double rhs = (1.0 / sinh2(x) - 1.0 / sinh2(y)) / std::sinh(x + y);
  return {lhs, rhs};
}

}  // namespace sutherlax

#endif
