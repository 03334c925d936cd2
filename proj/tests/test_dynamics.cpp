#include "doctest.h"

#include "sutherlax/dynamics.hpp"
#include "sutherlax/sampling.hpp"

using namespace sutherlax;

namespace {

PhasePoint demo_point(int n) {
  RealVector q(n), p(n);
  for (int c = 0; c < n; ++c) {
    q[c] = 0.6 * (n - c) + 0.4;
    p[c] = 0.3 - 0.15 * c;
  }
  return {q, p};
}

}  // namespace

TEST_CASE("hamilton_rhs") {
  const CouplingParams c = make_couplings(1.0, 1.2, 0.7);

  SUBCASE("dq/dt = p") {
    RngStream rng(70, 0);
    const PhasePoint x = random_point(3, rng);
    auto [dq, dp] = hamilton_rhs(x, c);
    CHECK((dq - x.p).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("n=1 closed form, repulsive force") {
    RealVector q(1), p(1);
    q << 0.9;
    p << 0.0;
    auto [dq, dp] = hamilton_rhs({q, p}, c);
    const double expect = 2.0 * c.g1sq * std::cosh(0.9) / std::pow(std::sinh(0.9), 3) +
                          4.0 * c.g2sq * std::cosh(1.8) / std::pow(std::sinh(1.8), 3);
    CHECK(dp[0] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(dp[0] > 0.0);
  }
}

TEST_CASE("integrate: conservation and reversibility") {
  const CouplingParams c = make_couplings(1.0, 1.1, 0.4);
  IntegratorConfig cfg;
  cfg.method = IntegratorConfig::Method::Rk4Fixed;
  cfg.dt = 1e-3;
  cfg.t_end = 2.0;
  cfg.sample_stride = 10;

  SUBCASE("single particle bounces outward with small energy drift") {
    RealVector q(1), p(1);
    q << 0.4;
    p << 0.0;
    const Trajectory traj = integrate({q, p}, c, cfg);
    double drift = 0.0;
    for (double H : traj.energies) drift = std::max(drift, std::abs(H - traj.energies[0]));
    CHECK(drift < 1e-10);
    CHECK(traj.states.back().q[0] > 0.4);  // repulsive wall pushes out
    for (const PhasePoint& x : traj.states) CHECK(x.q[0] > 0.0);
  }
  SUBCASE("time reversal returns the initial point") {
    const PhasePoint x0 = demo_point(2);
    const Trajectory fwd = integrate(x0, c, cfg);
    PhasePoint xr = fwd.states.back();
    xr.p = -xr.p;
    const Trajectory back = integrate(xr, c, cfg);
    const PhasePoint& xe = back.states.back();
    CHECK((xe.q - x0.q).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((xe.p + x0.p).cwiseAbs().maxCoeff() < 1e-6);
  }
  SUBCASE("bad config rejected") {
    IntegratorConfig bad = cfg;
    bad.dt = 0.0;
    CHECK_THROWS_AS(integrate(demo_point(1), c, bad), std::invalid_argument);
  }
}

TEST_CASE("Lax residual along trajectories (Theorem 3.2)") {
  const CouplingParams c = make_couplings(1.0, 1.3, 0.5);
  IntegratorConfig cfg;
  cfg.method = IntegratorConfig::Method::Rk4Fixed;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;

  const Trajectory traj = integrate(demo_point(2), c, cfg);
  SUBCASE("solutions satisfy dL/dt = [B, L] to the FD floor") {
    CHECK(lax_residual(traj, c) < 1e-5);
  }
  SUBCASE("perturbed curves violate the Lax equation") {
    Trajectory fake = traj;
    for (PhasePoint& x : fake.states) x.p *= 1.01;
    CHECK(lax_residual(fake, c) > 1e-3);
  }
  SUBCASE("a frozen curve has residual ||[B, L]||") {
    Trajectory frozen;
    const PhasePoint x = demo_point(2);
    for (int k = 0; k < 5; ++k) {
      frozen.times.push_back(k * 1e-3);
      frozen.states.push_back(x);
    }
    const double expect =
        max_abs(comm(b_matrix_closed(x.q, c).value, lax_matrix(x, c).value));
    CHECK(lax_residual(frozen, c) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect > 0.1);  // forces do not vanish at this point
  }
  SUBCASE("too few samples rejected") {
    Trajectory tiny;
    tiny.times = {0.0};
    tiny.states = {demo_point(2)};
    CHECK_THROWS_AS(lax_residual(tiny, c), std::invalid_argument);
  }
}

TEST_CASE("isospectral flow") {
  const CouplingParams c = make_couplings(1.0, 1.2, -0.3);
  IntegratorConfig cfg;
  cfg.method = IntegratorConfig::Method::Rk4Fixed;
  cfg.dt = 1e-3;
  cfg.t_end = 2.0;
  cfg.sample_stride = 20;

  SUBCASE("spectrum and trace are conserved") {
    const Trajectory traj = integrate(demo_point(2), c, cfg);
    CHECK(spectral_drift(traj, c) < 1e-8);
    for (const PhasePoint& x : traj.states)
      CHECK(std::abs(lax_matrix(x, c).value.trace()) < 1e-12);
  }
  SUBCASE("drift scales like dt^4") {
    IntegratorConfig coarse = cfg;
    coarse.dt = 8e-3;
    coarse.t_end = 0.8;
    coarse.sample_stride = 100;
    IntegratorConfig fine = coarse;
    fine.dt = 4e-3;
    const double d_coarse = spectral_drift(integrate(demo_point(2), c, coarse), c);
    const double d_fine = spectral_drift(integrate(demo_point(2), c, fine), c);
    CHECK(d_coarse / d_fine > 8.0);   // nominal 16
    CHECK(d_coarse / d_fine < 32.0);
  }
}

TEST_CASE("KAK decomposition") {
  RngStream rng(71, 0);

  SUBCASE("diagonal input") {
    RealVector q(2);
    q << 1.3, 0.4;
    const KakFactors f = kak_decompose(build_Q(q).exp());
    CHECK((f.q - q).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_abs(f.kL - CMatrix::Identity(4, 4)) < 1e-12);
    CHECK(max_abs(f.kR - CMatrix::Identity(4, 4)) < 1e-12);
  }
  SUBCASE("construct-then-decompose round trip") {
    for (int n : {1, 2, 3}) {
      BasisSet basis(n);
      for (int rep = 0; rep < 5; ++rep) {
        const PhasePoint x = random_point(n, rng, 0.3);
        const CMatrix kL = random_k_element(basis, rng).exp();
        const CMatrix kR = random_k_element(basis, rng).exp();
        const CMatrix y = kL * build_Q(x.q).exp() * kR.inverse();
        const KakFactors f = kak_decompose(y);
        CHECK((f.q - x.q).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(max_abs(f.kL * build_Q(f.q).exp() * f.kR.inverse() - y) < 1e-10);
        // factors lie in K: unitary and C-commuting
        const CMatrix C = build_C(n);
        CHECK(max_abs(f.kL * f.kL.adjoint() - CMatrix::Identity(2 * n, 2 * n)) < 1e-10);
        CHECK(max_abs(f.kR * f.kR.adjoint() - CMatrix::Identity(2 * n, 2 * n)) < 1e-10);
        CHECK(max_abs(comm(C, f.kL)) < 1e-10);
        CHECK(max_abs(comm(C, f.kR)) < 1e-10);
      }
    }
  }
  SUBCASE("eigenvalues of y y* pair up as (lambda, 1/lambda)") {
    BasisSet basis(2);
    const PhasePoint x = random_point(2, rng, 0.3);
    const CMatrix y = random_k_element(basis, rng).exp() * build_Q(x.q).exp() *
                      random_k_element(basis, rng).exp();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(y * y.adjoint());
    const RealVector lam = es.eigenvalues();
    for (int i = 0; i < 2; ++i)
      CHECK(lam[i] * lam[3 - i] == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("rejects non-group and wall inputs") {
    CHECK_THROWS_AS(kak_decompose(2.0 * CMatrix::Identity(4, 4)), std::invalid_argument);
    RealVector q(2);
    q << 0.9, 0.9 + 1e-13;  // eigenvalue collision
    CHECK_THROWS_AS(kak_decompose(build_Q(q).exp()), EigenvalueCollisionError);
  }
}

TEST_CASE("projection solver") {
  const CouplingParams c = make_couplings(1.0, 1.2, 0.4);

  SUBCASE("t = 0 returns the initial point exactly") {
    const PhasePoint x0 = demo_point(2);
    const Trajectory traj = projection_solve(x0, c, {0.0});
    CHECK((traj.states[0].q - x0.q).cwiseAbs().maxCoeff() == 0.0);
    CHECK((traj.states[0].p - x0.p).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("short-time oracle dq/dt = p with Richardson extrapolation") {
    const PhasePoint x0 = demo_point(2);
    const Trajectory t1 = projection_solve(x0, c, {1e-3});
    const Trajectory t2 = projection_solve(x0, c, {1e-4});
    const RealVector r1 = (t1.states[0].q - x0.q) / 1e-3;
    const RealVector r2 = (t2.states[0].q - x0.q) / 1e-4;
    const RealVector extrap = (10.0 * r2 - r1) / 9.0;
    CHECK((extrap - x0.p).cwiseAbs().maxCoeff() < 1e-6);
  }
  SUBCASE("matches the adaptive ODE integration, n=2") {
    const PhasePoint x0 = demo_point(2);
    IntegratorConfig cfg;
    cfg.method = IntegratorConfig::Method::Rk45Adaptive;
    cfg.dt = 0.02;
    cfg.t_end = 2.0;
    const Trajectory ode = integrate(x0, c, cfg);
    const Trajectory proj = projection_solve(x0, c, ode.times);
    double worst = 0.0;
    for (std::size_t k = 0; k < ode.times.size(); ++k)
      worst = std::max(worst,
                       (proj.states[k].q - ode.states[k].q).cwiseAbs().maxCoeff());
    CHECK(worst < 1e-6);
  }
  SUBCASE("negative times rejected") {
    CHECK_THROWS_AS(projection_solve(demo_point(1), c, {-1.0}), std::invalid_argument);
  }
}
