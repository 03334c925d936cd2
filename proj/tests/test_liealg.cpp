#include "doctest.h"

#include "sutherlax/liealg.hpp"
#include "sutherlax/sampling.hpp"

using namespace sutherlax;

TEST_CASE("build_C basic structure") {
  CHECK_THROWS_AS(build_C(0), std::invalid_argument);
  const CMatrix C1 = build_C(1);
  CHECK(C1(0, 0) == Complex(0.0));
  CHECK(C1(0, 1) == Complex(1.0));
  CHECK(C1(1, 0) == Complex(1.0));
  CHECK(C1(1, 1) == Complex(0.0));
  const CMatrix C3 = build_C(3);
  CHECK(max_abs(C3 * C3 - CMatrix::Identity(6, 6)) == 0.0);
  const CMatrix C2 = build_C(2);
  CHECK(max_abs(C2 - C2.adjoint()) == 0.0);
}

TEST_CASE("root values") {
  RealVector q(2);
  q << 2.0, 0.5;
  CHECK(root_value(root_diff(1, 2), q) == doctest::Approx(1.5));
  RealVector q1(1);
  q1 << 0.7;
  CHECK(root_value(root_double(1), q1) == doctest::Approx(1.4));
  // positivity on the chamber
  RngStream rng(7, 0);
  const PhasePoint x = random_point(3, rng);
  for (const RootLabel& alpha : positive_roots(3)) CHECK(root_value(alpha, x.q) > 0.0);
}

TEST_CASE("basis cardinality and n=1 content") {
  BasisSet b1(1);
  CHECK(b1.dim() == 4);  // D_1^+, D_1^-, X_{2e_1}^{+,i}, X_{2e_1}^{-,i}
  CHECK(b1.roots().size() == 1);
  BasisSet b2(2);
  CHECK(b2.dim() == 16);
}

TEST_CASE("every basis element lies in u(n,n)") {
  for (int n : {1, 2, 3}) {
    BasisSet basis(n);
    for (const CMatrix& T : basis.elements()) CHECK(algebra_defect(T) < kStructuralTol);
  }
}

TEST_CASE("Gram matrix is the stated signature matrix") {
  BasisSet basis(3);
  const int d = basis.dim();
  for (int A = 0; A < d; ++A)
    for (int B = 0; B < d; ++B) {
      const double g = bilinear(basis.elements()[A], basis.elements()[B]);
      double expect = 0.0;
      if (A == B) {
        const BasisLabel& lbl = basis.labels()[A];
        const bool minus_type = (lbl.family == BasisLabel::Family::DPlus) ||
                                (lbl.family == BasisLabel::Family::X && lbl.sign > 0);
        expect = minus_type ? -1.0 : 1.0;
      }
      CHECK(std::abs(g - expect) < kStructuralTol);
    }
}

TEST_CASE("duals pair to the identity and give completeness") {
  BasisSet basis(2);
  for (int A = 0; A < basis.dim(); ++A)
    for (int B = 0; B < basis.dim(); ++B)
      CHECK(std::abs(bilinear(basis.duals()[A], basis.elements()[B]) - (A == B ? 1.0 : 0.0)) <
            kStructuralTol);
  RngStream rng(11, 0);
  for (int rep = 0; rep < 5; ++rep) {
    const CMatrix Y = random_algebra_element(basis, rng);
    CHECK(max_abs(basis.project(Y) - Y) < kStructuralTol);
  }
}

TEST_CASE("[Q, X] commutation relations") {
  RngStream rng(13, 0);
  BasisSet basis(3);
  for (int rep = 0; rep < 5; ++rep) {
    RealVector q(3);
    for (int c = 0; c < 3; ++c) q[c] = rng.uniform(-2.0, 2.0);
    const CMatrix Q = build_Q(q);
    for (const RootLabel& alpha : basis.roots())
      for (char part : BasisSet::parts(alpha))
        for (int sign : {+1, -1}) {
          const CMatrix lhs = comm(Q, basis.X(alpha, sign, part));
          const CMatrix rhs = root_value(alpha, q) * basis.X(alpha, -sign, part);
          CHECK(max_abs(lhs - rhs) < kStructuralTol);
        }
  }
}

TEST_CASE("refined decomposition") {
  BasisSet basis(3);
  RngStream rng(17, 0);
  const PhasePoint x = random_point(3, rng);

  SUBCASE("Q lies in a") {
    const RefinedParts parts = refined_decompose(build_Q(x.q));
    CHECK(max_abs(parts.m) < kStructuralTol);
    CHECK(max_abs(parts.m_perp) < kStructuralTol);
    CHECK(max_abs(parts.a_perp) < kStructuralTol);
    CHECK(max_abs(parts.a - build_Q(x.q)) < kStructuralTol);
  }
  SUBCASE("D_1^+ lies in m") {
    const RefinedParts parts = refined_decompose(basis.Dplus(1));
    CHECK(max_abs(parts.m - basis.Dplus(1)) < kStructuralTol);
    CHECK(max_abs(parts.m_perp) + max_abs(parts.a) + max_abs(parts.a_perp) < kStructuralTol);
  }
  SUBCASE("reconstruction, orthogonality, idempotence") {
    const CMatrix Y = random_algebra_element(basis, rng);
    const RefinedParts parts = refined_decompose(Y);
    CHECK(max_abs(parts.m + parts.m_perp + parts.a + parts.a_perp - Y) < 1e-14);
    const CMatrix comps[4] = {parts.m, parts.m_perp, parts.a, parts.a_perp};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        CHECK(std::abs(bilinear(comps[i], comps[j])) < kStructuralTol);
    const RefinedParts again = refined_decompose(parts.m_perp);
    CHECK(max_abs(again.m_perp - parts.m_perp) < kStructuralTol);
    CHECK(max_abs(again.m) + max_abs(again.a) + max_abs(again.a_perp) < kStructuralTol);
  }
  SUBCASE("non-algebra input is rejected") {
    CMatrix bad = CMatrix::Identity(6, 6);
    CHECK_THROWS_AS(refined_decompose(bad), std::invalid_argument);
  }
}

TEST_CASE("Casimir") {
  SUBCASE("symmetric under swap") {
    BasisSet basis(2);
    const Tensor omega = casimir(basis);
    CHECK((swap_factors(omega) - omega).cwiseAbs().maxCoeff() < kStructuralTol);
  }
  SUBCASE("reproducing property") {
    BasisSet basis(2);
    const Tensor omega = casimir(basis);
    RngStream rng(19, 0);
    const CMatrix I = CMatrix::Identity(4, 4);
    for (int rep = 0; rep < 20; ++rep) {
      const CMatrix Y = random_algebra_element(basis, rng);
      CHECK(max_abs(partial_trace_2(omega * kron(I, Y)) - Y) < kStructuralTol);
    }
  }
  SUBCASE("n=1 equals the explicit 4-term sum") {
    BasisSet basis(1);
    const RootLabel r = root_double(1);
    const Tensor expect = kron(basis.Dminus(1), basis.Dminus(1)) -
                          kron(basis.Dplus(1), basis.Dplus(1)) +
                          kron(basis.X(r, -1, 'i'), basis.X(r, -1, 'i')) -
                          kron(basis.X(r, +1, 'i'), basis.X(r, +1, 'i'));
    CHECK((casimir(basis) - expect).cwiseAbs().maxCoeff() < kStructuralTol);
  }
}

TEST_CASE("tensor utilities") {
  RngStream rng(23, 0);
  auto rand_mat = [&](int m) {
    CMatrix A(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return A;
  };
  const CMatrix A = rand_mat(2), B = rand_mat(2);
  CHECK(max_abs(partial_trace_2(kron(A, B)) - B.trace() * A) < kStructuralTol);
  CHECK((swap_factors(kron(A, B)) - kron(B, A)).cwiseAbs().maxCoeff() < kStructuralTol);
  const Tensor T = kron(A, B) + kron(B, A) * Complex(0.3, 0.1);
  CHECK((swap_factors(swap_factors(T)) - T).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(bilinear(A, rand_mat(4)), std::invalid_argument);
}
