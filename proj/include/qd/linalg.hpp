#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "qd/error.hpp"
#include "qd/tolerances.hpp"

namespace qd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Eigenvalues sorted non-increasing, eigenvectors as orthonormal columns.
struct EigenDecomposition {
  RealVector values;
  Matrix vectors;
};

/// Thin SVD: M = U diag(s) V*, s sorted non-increasing, length min(rows, cols).
struct SingularValueDecomposition {
  Matrix U;
  RealVector s;
  Matrix V;
};

/// M = V P with V an isometry and P positive definite.
struct PolarDecomposition {
  Matrix V;
  Matrix P;
};

namespace detail {

inline void require_nonempty_finite(const Matrix& M, const char* who) {
  if (M.rows() < 1 || M.cols() < 1) {
    throw Error(Errc::DimensionMismatch, std::string(who) + ": empty matrix");
  }
  if (!M.allFinite()) {
    throw Error(Errc::InvalidArgument, std::string(who) + ": non-finite entry");
  }
}

// Permutation sorting `values` non-increasing.
inline std::vector<Index> descending_order(const RealVector& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values(a) > values(b); });
  return order;
}

}  // namespace detail

/**
 * @brief Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
 *
 * Each rotation first removes the phase of the pivot a_pq and then applies the
 * classical real Jacobi rotation, so the combined transform G satisfies
 * (G* A G)_pq = 0. Sweeps repeat until no off-diagonal entry exceeds
 * eps * ||H||_F / n.
 */
inline EigenDecomposition hermitian_eigen(const Matrix& H, const Tolerances& tol = {}) {
  detail::require_nonempty_finite(H, "hermitian_eigen");
  if (H.rows() != H.cols()) {
    throw Error(Errc::DimensionMismatch, "hermitian_eigen: matrix is not square");
  }
  const Index n = H.rows();
  const double scale = H.norm();
  if ((H - H.adjoint()).norm() > tol.herm * std::max(scale, std::numeric_limits<double>::min())) {
    throw Error(Errc::NotHermitian, "hermitian_eigen: H differs from its adjoint");
  }

  Matrix A = (H + H.adjoint()) / 2.0;
  Matrix V = Matrix::Identity(n, n);
  const double threshold = std::numeric_limits<double>::epsilon() * scale / static_cast<double>(n);
  constexpr int max_sweeps = 100;

  bool converged = (n == 1) || scale == 0.0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Complex apq = A(p, q);
        const double mag = std::abs(apq);
        if (mag <= threshold) continue;
        rotated = true;

        const Complex phase = apq / mag;
        const double theta = (A(q, q).real() - A(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // G = D R: G_pp = c, G_pq = s, G_qp = -s conj(phase), G_qq = c conj(phase).
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        for (Index i = 0; i < n; ++i) {
          const Complex aip = A(i, p);
          const Complex aiq = A(i, q);
          A(i, p) = aip * c + aiq * gqp;
          A(i, q) = aip * s + aiq * gqq;
          const Complex vip = V(i, p);
          const Complex viq = V(i, q);
          V(i, p) = vip * c + viq * gqp;
          V(i, q) = vip * s + viq * gqq;
        }
        for (Index j = 0; j < n; ++j) {
          const Complex apj = A(p, j);
          const Complex aqj = A(q, j);
          A(p, j) = c * apj + std::conj(gqp) * aqj;
          A(q, j) = s * apj + std::conj(gqq) * aqj;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(Errc::NoConvergence, "hermitian_eigen: sweep budget exhausted");
  }

  const RealVector diag = A.diagonal().real();
  const auto order = detail::descending_order(diag);
  EigenDecomposition out{RealVector(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.values(k) = diag(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = V.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

inline SingularValueDecomposition svd(const Matrix& M) {
  detail::require_nonempty_finite(M, "svd");
  Eigen::JacobiSVD<Matrix> solver(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NoConvergence, "svd: solver failed");
  }
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

inline RealVector singular_values(const Matrix& M) {
  detail::require_nonempty_finite(M, "singular_values");
  Eigen::JacobiSVD<Matrix> solver(M);
  return solver.singularValues();
}

inline double op_norm(const Matrix& M) { return singular_values(M)(0); }

/// max(rows, cols) * eps * s_max.
inline double rank_tolerance(const Matrix& M, const RealVector& s) {
  const double dim = static_cast<double>(std::max(M.rows(), M.cols()));
  return dim * std::numeric_limits<double>::epsilon() * (s.size() > 0 ? s(0) : 0.0);
}

/// Numerical rank under rank_tolerance.
inline Index numerical_rank(const Matrix& M) {
  const RealVector s = singular_values(M);
  const double cut = rank_tolerance(M, s);
  return static_cast<Index>((s.array() > cut).count());
}

/// Reduced minimum modulus: the smallest nonzero singular value, ||M^+||^{-1}.
/// The zero matrix has gamma 0.
inline double gamma(const Matrix& M) {
  const RealVector s = singular_values(M);
  const double cut = rank_tolerance(M, s);
  double smallest = 0.0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) smallest = s(i);
  }
  return smallest;
}

/// Polar decomposition of a full-column-rank m x n matrix (m >= n).
inline PolarDecomposition polar(const Matrix& M) {
  detail::require_nonempty_finite(M, "polar");
  if (M.rows() < M.cols()) {
    throw Error(Errc::RankDeficient, "polar: more columns than rows, cannot have full column rank");
  }
  const SingularValueDecomposition d = svd(M);
  const double cut = rank_tolerance(M, d.s);
  if (d.s(d.s.size() - 1) <= cut) {
    throw Error(Errc::RankDeficient, "polar: smallest singular value below rank tolerance");
  }
  PolarDecomposition out;
  out.V = d.U * d.V.adjoint();
  out.P = d.V * d.s.cast<Complex>().asDiagonal() * d.V.adjoint();
  out.P = (out.P + out.P.adjoint()) / 2.0;
  return out;
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. Columns must be
/// linearly independent.
inline Matrix orthonormalize_columns(Matrix Q) {
  for (Index j = 0; j < Q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < j; ++i) {
        const Complex proj = Q.col(i).dot(Q.col(j));
        Q.col(j) -= proj * Q.col(i);
      }
    }
    const double len = Q.col(j).norm();
    if (!(len > 0.0)) {
      throw Error(Errc::RankDeficient, "orthonormalize_columns: dependent columns");
    }
    Q.col(j) /= len;
  }
  return Q;
}

inline Matrix orthonormalize_rows(const Matrix& M) { return orthonormalize_columns(M.adjoint()).adjoint(); }

/// Principal square root of a Hermitian positive semidefinite matrix.
inline Matrix psd_sqrt(const Matrix& H, const Tolerances& tol = {}) {
  const EigenDecomposition e = hermitian_eigen(H, tol);
  const RealVector roots = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * roots.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

}  // namespace qd
