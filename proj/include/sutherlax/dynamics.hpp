#ifndef SUTHERLAX_DYNAMICS_HPP
#define SUTHERLAX_DYNAMICS_HPP

#include <algorithm>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "sutherlax/poisson.hpp"

namespace sutherlax {

/// Thrown when a trajectory approaches a Weyl-chamber wall.
struct WallApproachError : std::runtime_error {
  double t;
  WallApproachError(double t_, const std::string& msg) : std::runtime_error(msg), t(t_) {}
};

/// Thrown on eigenvalue collision in the KAK / projection solver.
struct EigenvalueCollisionError : std::runtime_error {
  double t;
  EigenvalueCollisionError(double t_, const std::string& msg)
      : std::runtime_error(msg), t(t_) {}
};

inline std::pair<RealVector, RealVector> hamilton_rhs(const PhasePoint& x,
                                                      const CouplingParams& c) {
  return {x.p, -hamiltonian_dq(x, c)};
}

struct IntegratorConfig {
  enum class Method { Rk4Fixed, Rk45Adaptive };
  Method method = Method::Rk45Adaptive;
  double dt = 1e-3;     // rk4 step; also the sample spacing baseline
  double rtol = 1e-10;  // rk45 only
  double atol = 1e-12;  // rk45 only
  double t_end = 2.0;
  int sample_stride = 1;
  double wall_margin = 1e-4;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<double> energies;
  std::vector<Eigen::VectorXcd> lax_spectra;  // sorted eigenvalues of L per sample
};

namespace detail {

inline Eigen::VectorXcd sorted_lax_spectrum(const PhasePoint& x, const CouplingParams& c) {
  Eigen::ComplexEigenSolver<CMatrix> es(lax_matrix(x, c).value, false);
  Eigen::VectorXcd ev = es.eigenvalues();
  std::vector<Complex> v(ev.data(), ev.data() + ev.size());
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (int i = 0; i < ev.size(); ++i) ev[i] = v[i];
  return ev;
}

inline RealVector pack(const PhasePoint& x) {
  RealVector y(2 * x.n());
  y.head(x.n()) = x.q;
  y.tail(x.n()) = x.p;
  return y;
}

inline PhasePoint unpack(const RealVector& y) {
  const int n = static_cast<int>(y.size()) / 2;
  return {y.head(n), y.tail(n)};
}

inline RealVector rhs_packed(const RealVector& y, const CouplingParams& c) {
  const PhasePoint x = unpack(y);
  auto [dq, dp] = hamilton_rhs(x, c);
  RealVector dy(y.size());
  dy.head(x.n()) = dq;
  dy.tail(x.n()) = dp;
  return dy;
}

inline RealVector rk4_step(const RealVector& y, double h, const CouplingParams& c) {
  const RealVector k1 = rhs_packed(y, c);
  const RealVector k2 = rhs_packed(y + 0.5 * h * k1, c);
  const RealVector k3 = rhs_packed(y + 0.5 * h * k2, c);
  const RealVector k4 = rhs_packed(y + h * k3, c);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) step with embedded error estimate.
inline RealVector dopri5_step(const RealVector& y, double h, const CouplingParams& c,
                              double& err, double rtol, double atol) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  const RealVector k1 = rhs_packed(y, c);
  const RealVector k2 = rhs_packed(y + h * a21 * k1, c);
  const RealVector k3 = rhs_packed(y + h * (a31 * k1 + a32 * k2), c);
  const RealVector k4 = rhs_packed(y + h * (a41 * k1 + a42 * k2 + a43 * k3), c);
  const RealVector k5 = rhs_packed(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), c);
  const RealVector k6 =
      rhs_packed(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), c);
  const RealVector y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const RealVector k7 = rhs_packed(y5, c);
  const RealVector ev = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  err = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
    err = std::max(err, std::abs(ev[i]) / sc);
  }
  return y5;
}

// Adaptive integration from t0 to t1; y updated in place.
inline void dopri5_advance(RealVector& y, double t0, double t1, const CouplingParams& c,
                           double rtol, double atol, double wall_margin) {
  double t = t0;
  double h = std::min(1e-2, t1 - t0);
  while (t < t1) {
    h = std::min(h, t1 - t);
    double err = 0.0;
    const RealVector ytry = dopri5_step(y, h, c, err, rtol, atol);
    if (err <= 1.0) {
      t += h;
      y = ytry;
      if (chamber_margin(unpack(y).q) < wall_margin)
        throw WallApproachError(t, "integrate: trajectory approached a chamber wall");
    }
    const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
    h *= fac;
    if (h < 1e-14) throw std::runtime_error("integrate: step size underflow");
  }
}

}  // namespace detail

/// Integrates Hamilton's equations, recording diagnostics per sample.
inline Trajectory integrate(const PhasePoint& x0, const CouplingParams& c,
                            const IntegratorConfig& cfg) {
  require_chamber(x0.q, "integrate");
  if (cfg.dt <= 0.0 || cfg.t_end < 0.0 || cfg.sample_stride < 1)
    throw std::invalid_argument("integrate: bad configuration");
  Trajectory traj;
  auto record = [&](double t, const PhasePoint& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.energies.push_back(hamiltonian(x, c));
    traj.lax_spectra.push_back(detail::sorted_lax_spectrum(x, c));
  };
  record(0.0, x0);
  RealVector y = detail::pack(x0);
  const double sample_dt = cfg.dt * cfg.sample_stride;
  const long nsteps = std::lround(cfg.t_end / cfg.dt);
  if (cfg.method == IntegratorConfig::Method::Rk4Fixed) {
    for (long k = 1; k <= nsteps; ++k) {
      y = detail::rk4_step(y, cfg.dt, c);
      const PhasePoint x = detail::unpack(y);
      if (chamber_margin(x.q) < cfg.wall_margin)
        throw WallApproachError(k * cfg.dt, "integrate: trajectory approached a chamber wall");
      if (k % cfg.sample_stride == 0) record(k * cfg.dt, x);
    }
  } else {
    const long nsamples = std::lround(cfg.t_end / sample_dt);
    for (long k = 1; k <= nsamples; ++k) {
      detail::dopri5_advance(y, (k - 1) * sample_dt, k * sample_dt, c, cfg.rtol, cfg.atol,
                             cfg.wall_margin);
      record(k * sample_dt, detail::unpack(y));
    }
  }
  return traj;
}

/// Max over interior samples of || dL/dt (time FD) - [B(q), L] ||_max.
inline double lax_residual(const Trajectory& traj, const CouplingParams& c) {
  if (traj.times.size() < 3) throw std::invalid_argument("lax_residual: need >= 3 samples");
  const BasisSet basis(traj.states.front().n());
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < traj.times.size(); ++k) {
    const double h2 = traj.times[k + 1] - traj.times[k - 1];
    const CMatrix dL =
        (lax_matrix(traj.states[k + 1], c).value - lax_matrix(traj.states[k - 1], c).value) / h2;
    const CMatrix L = lax_matrix(traj.states[k], c).value;
    const CMatrix B = b_matrix_closed(traj.states[k].q, c).value;
    worst = std::max(worst, max_abs(dL - comm(B, L)));
  }
  return worst;
}

/// Max drift of the sorted Lax spectrum relative to the initial sample.
inline double spectral_drift(const Trajectory& traj, const CouplingParams& c) {
  (void)c;
  if (traj.lax_spectra.empty()) throw std::invalid_argument("spectral_drift: empty trajectory");
  double worst = 0.0;
  const Eigen::VectorXcd& ref = traj.lax_spectra.front();
  for (const auto& ev : traj.lax_spectra)
    worst = std::max(worst, (ev - ref).cwiseAbs().maxCoeff());
  return worst;
}

/// KAK factors y = kL e^{Q(q)} kR^{-1} with kL, kR in K.
struct KakFactors {
  RealVector q;
  CMatrix kL, kR;
};

/// Numeric KAK decomposition via the Hermitian eigenproblem of y y*.
/// Eigenvalues of y y* come in (lambda, 1/lambda) pairs; q_c = log(lambda_c)/2
/// from the n eigenvalues above 1, and the paired eigenvector is C u.
inline KakFactors kak_decompose(const CMatrix& y, double collision_tol = 1e-10) {
  const int N = static_cast<int>(y.rows());
  const int n = N / 2;
  const CMatrix C = build_C(n);
  if ((y.adjoint() * C * y - C).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("kak_decompose: input is not in U(n,n)");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(y * y.adjoint());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("kak_decompose: eigensolver failed");
  const RealVector lam = es.eigenvalues();  // ascending
  for (int i = 0; i + 1 < N; ++i)
    if (lam[i + 1] - lam[i] < collision_tol)
      throw EigenvalueCollisionError(0.0, "kak_decompose: eigenvalue collision");
  // Top n eigenvalues, descending; all must exceed 1 (regularity).
  KakFactors f;
  f.q = RealVector(n);
  CMatrix kL = CMatrix::Zero(N, N);
  for (int c = 0; c < n; ++c) {
    const int idx = N - 1 - c;
    if (lam[idx] <= 1.0 + collision_tol)
      throw EigenvalueCollisionError(0.0, "kak_decompose: eigenvalue at the wall lambda = 1");
    f.q[c] = 0.5 * std::log(lam[idx]);
    Eigen::VectorXcd u = es.eigenvectors().col(idx);
    // M-phase gauge: first non-negligible component made real non-negative.
    int piv = 0;
    while (piv < N - 1 && std::abs(u[piv]) < 1e-8) ++piv;
    u *= std::conj(u[piv]) / std::abs(u[piv]);
    kL.col(c) = u;
    kL.col(n + c) = C * u;  // eigenvector of the paired eigenvalue 1/lambda
  }
  f.kL = kL;
  f.kR = build_Q(-f.q).exp() * kL.adjoint() * y;
  if ((f.kL * build_Q(f.q).exp() * f.kR.inverse() - y).cwiseAbs().maxCoeff() > 1e-10)
    throw std::runtime_error("kak_decompose: reconstruction check failed");
  return f;
}

/// Solves the flow by projecting the free geodesic y(t) = e^{Q0} e^{t L0}:
/// q(t) from the KAK factors, p(t) from the conjugated Lax matrix.
inline Trajectory projection_solve(const PhasePoint& x0, const CouplingParams& c,
                                   const std::vector<double>& times) {
  require_chamber(x0.q, "projection_solve");
  const int n = x0.n();
  const CMatrix L0 = lax_matrix(x0, c).value;
  const CMatrix expQ0 = build_Q(x0.q).exp();
  Trajectory traj;
  auto record = [&](double t, const PhasePoint& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.energies.push_back(hamiltonian(x, c));
    traj.lax_spectra.push_back(detail::sorted_lax_spectrum(x, c));
  };
  for (double t : times) {
    if (t < 0.0) throw std::invalid_argument("projection_solve: negative time");
    if (t == 0.0) {
      record(0.0, x0);
      continue;
    }
    const CMatrix y = expQ0 * (t * L0).exp();
    KakFactors f;
    try {
      f = kak_decompose(y);
    } catch (const EigenvalueCollisionError& e) {
      throw EigenvalueCollisionError(t, e.what());
    }
    if (!in_chamber(f.q))
      throw WallApproachError(t, "projection_solve: projected point left the chamber");
    const CMatrix Lt = f.kR.adjoint() * L0 * f.kR;
    RealVector p(n);
    for (int i = 0; i < n; ++i) p[i] = Lt(i, i).real();
    record(t, PhasePoint{f.q, p});
  }
  return traj;
}

}  // namespace sutherlax

#endif
