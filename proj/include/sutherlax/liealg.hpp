#ifndef SUTHERLAX_LIEALG_HPP
#define SUTHERLAX_LIEALG_HPP

#include <array>
#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "sutherlax/core.hpp"

namespace sutherlax {

/// Positive roots of type C_n: e_a - e_b, e_a + e_b (a < b) and 2 e_c.
struct RootLabel {
  enum class Kind { Difference, Sum, Double };
  Kind kind;
  int a;  // 1-based; for Double only `a` is used
  int b;  // a < b for Difference/Sum, unused for Double

  friend bool operator<(const RootLabel& x, const RootLabel& y) {
    return std::tie(x.kind, x.a, x.b) < std::tie(y.kind, y.a, y.b);
  }
  friend bool operator==(const RootLabel& x, const RootLabel& y) {
    return std::tie(x.kind, x.a, x.b) == std::tie(y.kind, y.a, y.b);
  }
};

inline RootLabel root_diff(int a, int b) { return {RootLabel::Kind::Difference, a, b}; }
inline RootLabel root_sum(int a, int b) { return {RootLabel::Kind::Sum, a, b}; }
inline RootLabel root_double(int c) { return {RootLabel::Kind::Double, c, 0}; }

/// Positive roots in canonical order: differences by (a,b), sums by (a,b),
/// doubles by c.
inline std::vector<RootLabel> positive_roots(int n) {
  std::vector<RootLabel> roots;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) roots.push_back(root_diff(a, b));
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) roots.push_back(root_sum(a, b));
  for (int c = 1; c <= n; ++c) roots.push_back(root_double(c));
  return roots;
}

inline double root_value(const RootLabel& alpha, const RealVector& q) {
  switch (alpha.kind) {
    case RootLabel::Kind::Difference: return q[alpha.a - 1] - q[alpha.b - 1];
    case RootLabel::Kind::Sum: return q[alpha.a - 1] + q[alpha.b - 1];
    case RootLabel::Kind::Double: return 2.0 * q[alpha.a - 1];
  }
  throw std::logic_error("root_value: bad kind");
}

/// Label of a single basis vector of u(n,n).
struct BasisLabel {
  enum class Family { DPlus, DMinus, X };
  Family family;
  int c = 0;           // for DPlus/DMinus, 1-based
  RootLabel root{};    // for X
  int sign = 0;        // +1 or -1, for X
  char part = 0;       // 'r' or 'i', for X

  friend bool operator<(const BasisLabel& x, const BasisLabel& y) {
    return std::tie(x.family, x.c, x.root, x.sign, x.part) <
           std::tie(y.family, y.c, y.root, y.sign, y.part);
  }
};

namespace detail {

inline CMatrix unit(int N, int k, int l) {  // e_{k,l}, 1-based
  CMatrix E = CMatrix::Zero(N, N);
  E(k - 1, l - 1) = 1.0;
  return E;
}

}  // namespace detail

/// D_c^+ = (i/sqrt2)(e_cc + e_{n+c,n+c}), a basis element of m.
inline CMatrix make_Dplus(int n, int c) {
  using detail::unit;
  return (kI / std::sqrt(2.0)) * (unit(2 * n, c, c) + unit(2 * n, n + c, n + c));
}

/// D_c^- = (1/sqrt2)(e_cc - e_{n+c,n+c}), a basis element of a.
inline CMatrix make_Dminus(int n, int c) {
  using detail::unit;
  return (1.0 / std::sqrt(2.0)) * (unit(2 * n, c, c) - unit(2 * n, n + c, n + c));
}

/// X_alpha^{sign, part}; doubled roots only carry the imaginary part.
inline CMatrix make_X(int n, const RootLabel& alpha, int sign, char part) {
  using detail::unit;
  const int N = 2 * n;
  const double s = sign > 0 ? 1.0 : -1.0;
  if (alpha.kind == RootLabel::Kind::Double) {
    if (part != 'i') throw std::invalid_argument("make_X: doubled roots have only the i part");
    const int c = alpha.a;
    return (-kI / std::sqrt(2.0)) * (unit(N, c, n + c) + s * unit(N, n + c, c));
  }
  const int a = alpha.a, b = alpha.b;
  if (alpha.kind == RootLabel::Kind::Difference) {
    if (part == 'r')
      return 0.5 * (unit(N, a, b) - s * unit(N, b, a) + s * unit(N, n + a, n + b) -
                    unit(N, n + b, n + a));
    return (kI * 0.5) * (unit(N, a, b) + s * unit(N, b, a) + s * unit(N, n + a, n + b) +
                         unit(N, n + b, n + a));
  }
  // Sum root
  if (part == 'r')
    return -0.5 * (unit(N, a, n + b) - unit(N, b, n + a) + s * unit(N, n + a, b) -
                   s * unit(N, n + b, a));
  return (-kI * 0.5) * (unit(N, a, n + b) + unit(N, b, n + a) + s * unit(N, n + a, b) +
                        s * unit(N, n + b, a));
}

/// The Appendix-A basis of u(n,n) with duals, the positive roots
/// and the Z_alpha elements of m.
class BasisSet {
 public:
  explicit BasisSet(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("BasisSet: n must be positive");
    roots_ = positive_roots(n);
    // Canonical enumeration: D^+ by c, D^- by c, then per root +r, +i, -r, -i
    // (doubled roots: +i, -i only).
    for (int c = 1; c <= n; ++c)
      push({BasisLabel::Family::DPlus, c}, make_Dplus(n, c), -1.0);
    for (int c = 1; c <= n; ++c)
      push({BasisLabel::Family::DMinus, c}, make_Dminus(n, c), +1.0);
    for (const RootLabel& alpha : roots_) {
      for (int sign : {+1, -1}) {
        for (char part : parts(alpha)) {
          BasisLabel lbl;
          lbl.family = BasisLabel::Family::X;
          lbl.root = alpha;
          lbl.sign = sign;
          lbl.part = part;
          push(lbl, make_X(n, alpha, sign, part), sign > 0 ? -1.0 : +1.0);
        }
      }
    }
    for (const RootLabel& alpha : roots_) {
      if (alpha.kind == RootLabel::Kind::Double)
        zvecs_[alpha] = make_Dplus(n, alpha.a);
      else
        zvecs_[alpha] = (make_Dplus(n, alpha.a) + make_Dplus(n, alpha.b)) / std::sqrt(2.0);
    }
  }

  int n() const { return n_; }
  int dim() const { return static_cast<int>(elements_.size()); }  // = 4 n^2
  const std::vector<RootLabel>& roots() const { return roots_; }

  const std::vector<CMatrix>& elements() const { return elements_; }
  const std::vector<CMatrix>& duals() const { return duals_; }
  const std::vector<BasisLabel>& labels() const { return labels_; }

  const CMatrix& Dplus(int c) const { return elements_[c - 1]; }
  const CMatrix& Dminus(int c) const { return elements_[n_ + c - 1]; }
  const CMatrix& X(const RootLabel& alpha, int sign, char part) const {
    BasisLabel lbl;
    lbl.family = BasisLabel::Family::X;
    lbl.root = alpha;
    lbl.sign = sign;
    lbl.part = part;
    auto it = index_.find(lbl);
    if (it == index_.end()) throw std::invalid_argument("BasisSet::X: no such label");
    return elements_[it->second];
  }
  const CMatrix& Z(const RootLabel& alpha) const { return zvecs_.at(alpha); }

  /// Parts carried by a root: {r, i} for difference/sum, {i} for doubles.
  static std::vector<char> parts(const RootLabel& alpha) {
    if (alpha.kind == RootLabel::Kind::Double) return {'i'};
    return {'r', 'i'};
  }

  /// Expands Y over the basis: Y = sum_A <T^A, Y> T_A.
  CMatrix project(const CMatrix& Y) const {
    CMatrix out = CMatrix::Zero(Y.rows(), Y.cols());
    for (int A = 0; A < dim(); ++A) out += bilinear(duals_[A], Y) * elements_[A];
    return out;
  }

 private:
  void push(const BasisLabel& lbl, const CMatrix& T, double dual_sign) {
    index_[lbl] = static_cast<int>(elements_.size());
    labels_.push_back(lbl);
    elements_.push_back(T);
    duals_.push_back(dual_sign * T);
  }

  int n_;
  std::vector<RootLabel> roots_;
  std::vector<BasisLabel> labels_;
  std::vector<CMatrix> elements_;
  std::vector<CMatrix> duals_;
  std::map<BasisLabel, int> index_;
  std::map<RootLabel, CMatrix> zvecs_;
};

/// Refined orthogonal decomposition g = m + m_perp + a + a_perp.
struct RefinedParts {
  CMatrix m, m_perp, a, a_perp;
};

inline RefinedParts refined_decompose(const CMatrix& Y) {
  require_algebra(Y, "refined_decompose");
  const CMatrix k_part = 0.5 * (Y - Y.adjoint());
  const CMatrix p_part = 0.5 * (Y + Y.adjoint());
  RefinedParts out;
  out.m = k_part.diagonal().asDiagonal();
  out.m_perp = k_part - out.m;
  out.a = p_part.diagonal().asDiagonal();
  out.a_perp = p_part - out.a;
  return out;
}

/// Quadratic Casimir Omega_12 = sum_A T_A (x) T^A.
inline Tensor casimir(const BasisSet& basis) {
  const int N = 2 * basis.n();
  Tensor omega = Tensor::Zero(N * N, N * N);
  for (int A = 0; A < basis.dim(); ++A)
    omega += kron(basis.elements()[A], basis.duals()[A]);
  return omega;
}

}  // namespace sutherlax

#endif
