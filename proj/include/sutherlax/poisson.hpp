#ifndef SUTHERLAX_POISSON_HPP
#define SUTHERLAX_POISSON_HPP

#include <functional>
#include <optional>
#include <string>

#include "sutherlax/model.hpp"

namespace sutherlax {

/// Phase-space observable with an optional analytic gradient.
struct Observable {
  using Gradient = std::pair<Eigen::VectorXcd, Eigen::VectorXcd>;  // (d/dq, d/dp)
  std::function<Complex(const PhasePoint&)> evaluate;
  std::function<Gradient(const PhasePoint&)> gradient;  // may be empty
};

namespace detail {

inline Observable::Gradient fd_gradient(const Observable& f, const PhasePoint& x,
                                        double step = 1e-6) {
  const int n = x.n();
  Eigen::VectorXcd dq(n), dp(n);
  for (int c = 0; c < n; ++c) {
    PhasePoint xp = x, xm = x;
    xp.q[c] += step;
    xm.q[c] -= step;
    dq[c] = (f.evaluate(xp) - f.evaluate(xm)) / (2.0 * step);
    xp = x;
    xm = x;
    xp.p[c] += step;
    xm.p[c] -= step;
    dp[c] = (f.evaluate(xp) - f.evaluate(xm)) / (2.0 * step);
  }
  return {dq, dp};
}

}  // namespace detail

/// Canonical bracket sum_c (df/dq_c dg/dp_c - df/dp_c dg/dq_c), so that
/// {q_c, p_d} = delta_cd.
inline Complex canonical_bracket(const Observable& f, const Observable& g,
                                 const PhasePoint& x, bool allow_fd = true) {
  auto grad = [&](const Observable& h) {
    if (h.gradient) return h.gradient(x);
    if (!allow_fd)
      throw std::invalid_argument("canonical_bracket: gradient unavailable and FD disabled");
    return detail::fd_gradient(h, x);
  };
  const auto [fq, fp] = grad(f);
  const auto [gq, gp] = grad(g);
  Complex out = 0.0;
  for (int c = 0; c < x.n(); ++c) out += fq[c] * gp[c] - fp[c] * gq[c];
  return out;
}

/// Analytic partial derivatives of the Lax matrix.
struct LaxPartials {
  std::vector<CMatrix> dq, dp;
};

inline LaxPartials lax_partials(const PhasePoint& x, const CouplingParams& c) {
  require_chamber(x.q, "lax_partials");
  const int n = x.n();
  const int N = 2 * n;
  LaxPartials out;
  out.dq.assign(n, CMatrix::Zero(N, N));
  out.dp.assign(n, CMatrix::Zero(N, N));
  for (int i = 0; i < n; ++i) {
    out.dp[i](i, i) = 1.0;
    out.dp[i](n + i, n + i) = -1.0;
  }
  for (int i = 0; i < n; ++i) {
    // dB_cc/dq_c = -2i (kappa + nu cosh 2q_c) / sinh^2 2q_c
    const double q2 = 2.0 * x.q[i];
    const Complex dBcc = -2.0 * kI * (c.kappa + c.nu * std::cosh(q2)) / sinh2(q2);
    out.dq[i](i, n + i) += dBcc;
    out.dq[i](n + i, i) -= dBcc;
    for (int b = 0; b < n; ++b) {
      if (b == i) continue;
      const double dm = x.q[i] - x.q[b], dp_ = x.q[i] + x.q[b];
      // A_{ib} = -i mu / sinh(q_i - q_b) and its mirror A_{bi}
      const Complex dA = kI * c.mu * std::cosh(dm) / sinh2(dm);
      // B_{ib} = i mu / sinh(q_i + q_b), symmetric
      const Complex dB = -kI * c.mu * std::cosh(dp_) / sinh2(dp_);
      auto add = [&](int r, int s, Complex v) {
        out.dq[i](r, s) += v;               // A block
        out.dq[i](n + r, n + s) -= v;       // -A block
      };
      auto addB = [&](int r, int s, Complex v) {
        out.dq[i](r, n + s) += v;           // B block
        out.dq[i](n + r, s) -= v;           // -B block
      };
      add(i, b, dA);
      add(b, i, std::conj(dA));
      addB(i, b, dB);
      addB(b, i, dB);
    }
  }
  return out;
}

/// {L_1, L_2} with entries {L_ij, L_kl} packed under the Tensor convention.
inline Tensor lax_tensor_bracket(const PhasePoint& x, const CouplingParams& c) {
  const LaxPartials d = lax_partials(x, c);
  const int N = 2 * x.n();
  Tensor T = Tensor::Zero(N * N, N * N);
  for (int ci = 0; ci < x.n(); ++ci)
    T += kron(d.dq[ci], d.dp[ci]) - kron(d.dp[ci], d.dq[ci]);
  return T;
}

/// Residual report for the r-matrix bracket identity.
struct BracketReport {
  int n = 0;
  std::uint64_t seed = 0;
  PhasePoint point;
  double residual_max = 0.0;
  double residual_fro = 0.0;
  std::string method = "analytic";
};

/// Residual of {L_1, L_2} = [r_12, L_1] - [r_21, L_2] at x.
inline BracketReport rmatrix_identity_residual(const PhasePoint& x, const CouplingParams& c,
                                               const RMatrix& r) {
  require_chamber(x.q, "rmatrix_identity_residual");
  const int N = 2 * x.n();
  const CMatrix L = lax_matrix(x, c).value;
  const CMatrix I = CMatrix::Identity(N, N);
  const Tensor L1 = kron(L, I), L2 = kron(I, L);
  const Tensor r21 = swap_factors(r.tensor);
  const Tensor rhs = (r.tensor * L1 - L1 * r.tensor) - (r21 * L2 - L2 * r21);
  const Tensor residual = lax_tensor_bracket(x, c) - rhs;
  BracketReport rep;
  rep.n = x.n();
  rep.point = x;
  rep.residual_max = residual.cwiseAbs().maxCoeff();
  rep.residual_fro = residual.norm();
  return rep;
}

/// Observable tr L^j with analytic gradient j tr(L^{j-1} dL).
inline Observable trace_power_observable(int j, const CouplingParams& c) {
  Observable obs;
  obs.evaluate = [j, c](const PhasePoint& x) {
    const CMatrix L = lax_matrix(x, c).value;
    CMatrix P = CMatrix::Identity(L.rows(), L.cols());
    for (int k = 0; k < j; ++k) P *= L;
    return P.trace();
  };
  obs.gradient = [j, c](const PhasePoint& x) {
    const CMatrix L = lax_matrix(x, c).value;
    CMatrix P = CMatrix::Identity(L.rows(), L.cols());
    for (int k = 0; k < j - 1; ++k) P *= L;
    const LaxPartials d = lax_partials(x, c);
    const int n = x.n();
    Eigen::VectorXcd dq(n), dp(n);
    for (int ci = 0; ci < n; ++ci) {
      dq[ci] = double(j) * (P * d.dq[ci]).trace();
      dp[ci] = double(j) * (P * d.dp[ci]).trace();
    }
    return Observable::Gradient{dq, dp};
  };
  return obs;
}

/// |{tr L^j, tr L^k}| with analytic gradients.
inline double involution_residual(const PhasePoint& x, const CouplingParams& c, int j, int k) {
  const Observable fj = trace_power_observable(j, c);
  const Observable fk = trace_power_observable(k, c);
  return std::abs(canonical_bracket(fj, fk, x, false));
}

}  // namespace sutherlax

#endif
