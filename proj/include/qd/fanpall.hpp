#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "qd/error.hpp"
#include "qd/linalg.hpp"
#include "qd/tolerances.hpp"

// Constructive side of the Fan-Pall theorem: given a Hermitian H with spectrum
// lambda (length m) and a target mu (length n) inside the Fan-Pall box, find an
// n-dimensional subspace S such that the compression of H to S has spectrum mu.
//
// The descent m -> m-1 -> ... -> n goes through an explicit interlacing chain;
// each step removes one direction w from the current subspace, with w given by
// the rational weight formula for the one-step (Cauchy) inverse problem.

namespace qd {

/// Spectra nu^(m), nu^(m-1), ..., nu^(n) with consecutive levels interlacing.
struct InterlacingChain {
  std::vector<RealVector> spectra;
};

/// m x n matrix with orthonormal columns spanning S. P_S = basis * basis*.
struct SubspaceBasis {
  Matrix basis;

  Matrix projection() const { return basis * basis.adjoint(); }
};

namespace detail {

inline void require_sorted(const RealVector& v, const char* who) {
  if (!v.allFinite()) {
    throw Error(Errc::InvalidArgument, std::string(who) + ": non-finite entry");
  }
  for (Index i = 0; i + 1 < v.size(); ++i) {
    if (v(i) < v(i + 1)) {
      throw Error(Errc::NotSorted, std::string(who) + ": sequence is not non-increasing");
    }
  }
}

inline double spectral_scale(const RealVector& a, const RealVector& b) {
  double s = 1.0;
  if (a.size() > 0) s = std::max(s, a.cwiseAbs().maxCoeff());
  if (b.size() > 0) s = std::max(s, b.cwiseAbs().maxCoeff());
  return s;
}

}  // namespace detail

/// lambda_i >= mu_i and lambda_{m-n+i} <= mu_i for 1 <= i <= n, with slack tol.fp.
inline bool check_fan_pall(const RealVector& lambda, const RealVector& mu, const Tolerances& tol = {}) {
  detail::require_sorted(lambda, "check_fan_pall(lambda)");
  detail::require_sorted(mu, "check_fan_pall(mu)");
  const Index m = lambda.size();
  const Index n = mu.size();
  if (n > m) {
    throw Error(Errc::DimensionMismatch, "check_fan_pall: target longer than spectrum");
  }
  for (Index i = 0; i < n; ++i) {
    if (lambda(i) < mu(i) - tol.fp) return false;
    if (lambda(m - n + i) > mu(i) + tol.fp) return false;
  }
  return true;
}

/// Chain with nu^(k)_j = max(mu_j, lambda_{j+m-k}) for j <= n and lambda_{j+m-k} beyond.
inline InterlacingChain interlace_chain(const RealVector& lambda, const RealVector& mu, const Tolerances& tol = {}) {
  if (!check_fan_pall(lambda, mu, tol)) {
    throw Error(Errc::FanPallViolated, "interlace_chain: target spectrum violates the Fan-Pall inequalities");
  }
  const Index m = lambda.size();
  const Index n = mu.size();
  InterlacingChain chain;
  chain.spectra.reserve(static_cast<std::size_t>(m - n + 1));
  chain.spectra.push_back(lambda);
  for (Index k = m - 1; k >= n; --k) {
    RealVector level(k);
    for (Index j = 0; j < k; ++j) {
      const double tail = lambda(j + m - k);
      level(j) = j < n ? std::max(mu(j), tail) : tail;
    }
    chain.spectra.push_back(level);
  }
  // Endpoints exactly: within slack the formula reproduces them anyway.
  if (m > n) chain.spectra.back() = mu;
  return chain;
}

/// True when lambda_j >= nu_j >= lambda_{j+1} (length(nu) = length(lambda) - 1) within slack.
inline bool interlaces(const RealVector& lambda, const RealVector& nu, double slack) {
  if (nu.size() + 1 != lambda.size()) return false;
  for (Index j = 0; j < nu.size(); ++j) {
    if (nu(j) > lambda(j) + slack || nu(j) < lambda(j + 1) - slack) return false;
  }
  return true;
}

/**
 * @brief Squared weights of the deflation direction.
 *
 * For strictly interlacing data the entries are
 *   w_i^2 = prod_j (nu_j - lambda_i) / prod_{j != i} (lambda_j - lambda_i),
 * which sum to one. An eigenvalue nu_j that coincides with some lambda_i
 * (within tol.deflation_tie * scale) is matched with it and the matched
 * lambda_i gets weight zero; the formula is applied to what remains.
 */
inline RealVector deflation_weights(const RealVector& lambda, const RealVector& nu, const Tolerances& tol = {}) {
  detail::require_sorted(lambda, "deflate_once(lambda)");
  detail::require_sorted(nu, "deflate_once(nu)");
  const Index k = lambda.size();
  if (k < 1 || nu.size() != k - 1) {
    throw Error(Errc::DimensionMismatch, "deflate_once: nu must be one shorter than lambda");
  }
  const double scale = detail::spectral_scale(lambda, nu);
  const double tie = tol.deflation_tie * scale;
  if (!interlaces(lambda, nu, std::max(tol.fp * scale, tie))) {
    throw Error(Errc::InterlacingViolated, "deflate_once: lambda and nu do not interlace");
  }

  // Match coincident values; walk both sequences in order.
  std::vector<bool> lambda_used(static_cast<std::size_t>(k), false);
  std::vector<bool> nu_used(static_cast<std::size_t>(k - 1), false);
  for (Index j = 0; j < k - 1; ++j) {
    for (Index i = std::max<Index>(0, j - 1); i <= std::min<Index>(k - 1, j + 2); ++i) {
      if (!lambda_used[static_cast<std::size_t>(i)] && std::abs(lambda(i) - nu(j)) <= tie) {
        lambda_used[static_cast<std::size_t>(i)] = true;
        nu_used[static_cast<std::size_t>(j)] = true;
        break;
      }
    }
  }

  std::vector<Index> free_lambda;
  std::vector<double> lam;
  std::vector<double> mu;
  for (Index i = 0; i < k; ++i) {
    if (!lambda_used[static_cast<std::size_t>(i)]) {
      free_lambda.push_back(i);
      lam.push_back(lambda(i));
    }
  }
  for (Index j = 0; j < k - 1; ++j) {
    if (!nu_used[static_cast<std::size_t>(j)]) mu.push_back(nu(j));
  }
  if (lam.size() != mu.size() + 1) {
    throw Error(Errc::InterlacingViolated, "deflate_once: inconsistent coincidence pattern");
  }

  // Remaining data interlaces strictly; clamp rounding so each ratio stays in [0, 1].
  const std::size_t r = lam.size();
  RealVector weights = RealVector::Zero(k);
  for (std::size_t i = 0; i < r; ++i) {
    double w2 = 1.0;
    for (std::size_t j = 0; j < r - 1; ++j) {
      const std::size_t other = j < i ? j : j + 1;
      const double num = mu[j] - lam[i];
      const double den = lam[other] - lam[i];
      if (std::abs(den) <= tie) {
        throw Error(Errc::InterlacingViolated, "deflate_once: unmatched repeated eigenvalue");
      }
      w2 *= std::clamp(num / den, 0.0, 1.0);
    }
    weights(free_lambda[i]) = w2;
  }
  return weights;
}

/// Unit w in R^k such that diag(lambda) compressed to w-perp has spectrum nu.
inline RealVector deflate_once(const RealVector& lambda, const RealVector& nu, const Tolerances& tol = {}) {
  RealVector w = deflation_weights(lambda, nu, tol).cwiseSqrt();
  const double len = w.norm();
  if (!(len > 0.0)) {
    throw Error(Errc::InterlacingViolated, "deflate_once: degenerate weights");
  }
  return w / len;
}

/// Orthonormal basis (k x (k-1)) of the orthogonal complement of a unit vector in C^k.
inline Matrix orthogonal_complement(const Vector& w) {
  const Index k = w.size();
  const Matrix column = w;
  Eigen::HouseholderQR<Matrix> qr(column);
  const Matrix Q = qr.householderQ() * Matrix::Identity(k, k);
  return Q.rightCols(k - 1);
}

/**
 * @brief n-dimensional subspace S with spectrum(compression of H to S) = mu.
 *
 * Eigendecompose H, build the interlacing chain, then descend one dimension at
 * a time: remove the deflation direction from the current basis, re-orthonormalize,
 * and re-diagonalize the compressed operator so the next step again works on a
 * diagonal matrix.
 */
inline SubspaceBasis build_compression_subspace(const Matrix& H, const RealVector& mu, const Tolerances& tol = {}) {
  const EigenDecomposition eig = hermitian_eigen(H, tol);
  const InterlacingChain chain = interlace_chain(eig.values, mu, tol);

  Matrix basis = eig.vectors;
  RealVector current = eig.values;
  for (std::size_t level = 1; level < chain.spectra.size(); ++level) {
    const RealVector& target = chain.spectra[level];
    const RealVector w = deflate_once(current, target, tol);
    basis = orthonormalize_columns(basis * orthogonal_complement(w.cast<Complex>()));
    const Matrix compressed = basis.adjoint() * H * basis;
    const EigenDecomposition step = hermitian_eigen((compressed + compressed.adjoint()) / 2.0, tol);
    basis = basis * step.vectors;
    current = step.values;
  }
  return {basis};
}

/// Eigenvalues of basis* H basis, non-increasing.
inline RealVector compression_spectrum(const Matrix& H, const SubspaceBasis& S, const Tolerances& tol = {}) {
  const Matrix C = S.basis.adjoint() * H * S.basis;
  return hermitian_eigen((C + C.adjoint()) / 2.0, tol).values;
}

}  // namespace qd
