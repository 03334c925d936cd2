#ifndef SUTHERLAX_CORE_HPP
#define SUTHERLAX_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace sutherlax {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Element of g (x) g stored as an N^2 x N^2 matrix with the Kronecker
/// pairing (i,j)(x)(k,l) -> row i*N+k, column j*N+l (zero-based).
using Tensor = Eigen::MatrixXcd;

constexpr double kStructuralTol = 1e-12;

/// Minimum distance from the Weyl chamber walls accepted by the model
/// operations (the sinh kernels overflow beyond it).
constexpr double kChamberMargin = 1e-8;

inline const Complex kI{0.0, 1.0};

/// The 2n x 2n involution [[0, I], [I, 0]] defining U(n, n).
inline CMatrix build_C(int n) {
  if (n < 1) throw std::invalid_argument("build_C: n must be positive");
  const int N = 2 * n;
  CMatrix C = CMatrix::Zero(N, N);
  for (int c = 0; c < n; ++c) {
    C(c, n + c) = 1.0;
    C(n + c, c) = 1.0;
  }
  return C;
}

/// Q(q) = diag(q_1, ..., q_n, -q_1, ..., -q_n).
inline CMatrix build_Q(const RealVector& q) {
  const int n = static_cast<int>(q.size());
  CMatrix Q = CMatrix::Zero(2 * n, 2 * n);
  for (int c = 0; c < n; ++c) {
    Q(c, c) = q[c];
    Q(n + c, n + c) = -q[c];
  }
  return Q;
}

/// Max-abs entry of Y*C + CY; zero iff Y lies in u(n,n).
inline double algebra_defect(const CMatrix& Y) {
  const CMatrix C = build_C(static_cast<int>(Y.rows()) / 2);
  return (Y.adjoint() * C + C * Y).cwiseAbs().maxCoeff();
}

inline bool in_algebra(const CMatrix& Y, double tol = kStructuralTol) {
  return Y.rows() == Y.cols() && Y.rows() % 2 == 0 && algebra_defect(Y) < tol;
}

inline void require_algebra(const CMatrix& Y, const char* where) {
  if (!in_algebra(Y))
    throw std::invalid_argument(std::string(where) + ": matrix is not in u(n,n)");
}

/// tr(Y Z); the imaginary part is pure round-off for g-elements and is dropped.
inline double bilinear(const CMatrix& Y, const CMatrix& Z) {
  if (Y.rows() != Z.rows() || Y.cols() != Z.cols())
    throw std::invalid_argument("bilinear: dimension mismatch");
  return (Y * Z).trace().real();
}

inline CMatrix comm(const CMatrix& A, const CMatrix& B) { return A * B - B * A; }

inline double max_abs(const CMatrix& A) { return A.cwiseAbs().maxCoeff(); }

/// Kronecker product under the Tensor index convention.
inline Tensor kron(const CMatrix& A, const CMatrix& B) {
  const int ra = static_cast<int>(A.rows()), ca = static_cast<int>(A.cols());
  const int rb = static_cast<int>(B.rows()), cb = static_cast<int>(B.cols());
  Tensor T(ra * rb, ca * cb);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ca; ++j)
      T.block(i * rb, j * cb, rb, cb) = A(i, j) * B;
  return T;
}

/// Exchanges the two tensor factors: swap(A (x) B) = B (x) A.
inline Tensor swap_factors(const Tensor& T) {
  const int N2 = static_cast<int>(T.rows());
  const int N = static_cast<int>(std::lround(std::sqrt(double(N2))));
  if (N * N != N2 || T.cols() != T.rows())
    throw std::invalid_argument("swap_factors: not an N^2 x N^2 tensor");
  Tensor S(N2, N2);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k)
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l)
          S(k * N + i, l * N + j) = T(i * N + k, j * N + l);
  return S;
}

/// tr_2(X (x) Y) = tr(Y) X, extended linearly.
inline CMatrix partial_trace_2(const Tensor& T) {
  const int N2 = static_cast<int>(T.rows());
  const int N = static_cast<int>(std::lround(std::sqrt(double(N2))));
  if (N * N != N2 || T.cols() != T.rows())
    throw std::invalid_argument("partial_trace_2: not an N^2 x N^2 tensor");
  CMatrix M = CMatrix::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        M(i, j) += T(i * N + k, j * N + k);
  return M;
}

/// Distance of q from the closed chamber walls: min(q_n, gaps q_c - q_{c+1}).
inline double chamber_margin(const RealVector& q) {
  const int n = static_cast<int>(q.size());
  double m = q[n - 1];
  for (int c = 0; c + 1 < n; ++c) m = std::min(m, q[c] - q[c + 1]);
  return m;
}

inline bool in_chamber(const RealVector& q, double margin = kChamberMargin) {
  return q.size() > 0 && chamber_margin(q) > margin;
}

inline void require_chamber(const RealVector& q, const char* where) {
  if (!in_chamber(q))
    throw std::domain_error(std::string(where) +
                            ": q is outside the open Weyl chamber q_1 > ... > q_n > 0");
}

}  // namespace sutherlax

#endif
