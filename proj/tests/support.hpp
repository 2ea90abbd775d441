#pragma once

// Test-only helpers: random matrices with prescribed structure and oracles that
// avoid the library code paths they check.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "qd/frame.hpp"
#include "qd/linalg.hpp"
#include "qd/uin.hpp"

namespace qd::test {

inline Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix G(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) G(i, j) = Complex(normal(rng), normal(rng));
  return G;
}

/// Haar unitary via QR with phase correction (Eigen's QR, not the library's MGS).
inline Matrix random_unitary(Index n, std::mt19937_64& rng) {
  const Matrix G = gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex r = R(j, j);
    if (std::abs(r) > 0) Q.col(j) *= r / std::abs(r);
  }
  return Q;
}

/// n x m frame whose frame operator has eigenvalues `s` (length n), rotated randomly on both sides.
inline Frame frame_with_spectrum(const std::vector<double>& s, Index m, std::mt19937_64& rng) {
  const Index n = static_cast<Index>(s.size());
  Matrix core = Matrix::Zero(n, m);
  for (Index i = 0; i < n; ++i) core(i, i) = std::sqrt(s[static_cast<std::size_t>(i)]);
  return Frame(random_unitary(n, rng) * core * random_unitary(m, rng));
}

inline Frame random_frame(Index n, Index m, std::mt19937_64& rng) { return Frame(gaussian(n, m, rng)); }

/// Eigenvalues of a Hermitian matrix, non-increasing, via Eigen's solver.
inline RealVector oracle_eigenvalues(const Matrix& H) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((H + H.adjoint()) / 2.0);
  RealVector v = es.eigenvalues();
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

/// Singular values via eigenvalues of M*M or MM* (whichever is smaller).
inline RealVector oracle_singular_values(const Matrix& M) {
  const Matrix G = M.rows() <= M.cols() ? Matrix(M * M.adjoint()) : Matrix(M.adjoint() * M);
  return oracle_eigenvalues(G).cwiseMax(0.0).cwiseSqrt();
}

/// Random spectrum for a rank-n frame: n values in (lo, hi), non-increasing.
inline std::vector<double> random_spectrum(Index n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> s(static_cast<std::size_t>(n));
  for (auto& x : s) x = u(rng);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

inline std::vector<UINorm> all_norms() {
  return {UINorm::operator_norm(), UINorm::schatten(1), UINorm::schatten(2), UINorm::schatten(3.5),
          UINorm::parse("sinf"),   UINorm::kyfan(1),    UINorm::kyfan(2),    UINorm::kyfan(3)};
}

}  // namespace qd::test
