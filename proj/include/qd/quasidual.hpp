#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qd/error.hpp"
#include "qd/fanpall.hpp"
#include "qd/frame.hpp"
#include "qd/linalg.hpp"
#include "qd/tolerances.hpp"
#include "qd/uin.hpp"

namespace qd {

/// Singular values squared of F X* for an optimal Parseval frame X, and the
/// index r of the last Gramian eigenvalue >= 1 (capped at n, 0 if none).
struct OptimalSpectrum {
  RealVector d;
  Index r = 0;
};

/// Outcome of the optimal Parseval approximation of a frame.
struct QuasiDualResult {
  Matrix X;  ///< n x m coisometry, the synthesis of the Parseval quasi-dual
  SubspaceBasis subspace;
  OptimalSpectrum spectrum;
  double alpha_value = 0.0;
  UINorm norm = UINorm::operator_norm();
};

/**
 * @brief Optimal compression spectrum from the Gramian spectrum.
 *
 * d_j = lambda_{m-n+j} if that is >= 1, lambda_j if lambda_j < 1, and 1 otherwise;
 * equivalently d_j = min(max(1, lambda_{m-n+j}), lambda_j).
 */
inline OptimalSpectrum optimal_spectrum(const RealVector& lambda, Index n) {
  detail::require_sorted(lambda, "optimal_spectrum");
  const Index m = lambda.size();
  if (n < 1 || m < n) {
    throw Error(Errc::DimensionMismatch, "optimal_spectrum: need 1 <= n <= m");
  }
  const double rank_cut = static_cast<double>(m) * std::numeric_limits<double>::epsilon() * std::max(lambda(0), 0.0);
  if (!(lambda(n - 1) > rank_cut)) {
    throw Error(Errc::RankTooLow, "optimal_spectrum: lambda_n is not positive");
  }
  OptimalSpectrum out;
  out.d.resize(n);
  for (Index j = 0; j < n; ++j) {
    const double low = lambda(m - n + j);
    const double high = lambda(j);
    if (low >= 1.0) {
      out.d(j) = low;
    } else if (high < 1.0) {
      out.d(j) = high;
    } else {
      out.d(j) = 1.0;
    }
  }
  for (Index i = 0; i < n && lambda(i) >= 1.0; ++i) out.r = i + 1;
  return out;
}

/// |1 - d_j^{1/2}| for each j.
inline RealVector deviations(const OptimalSpectrum& spec) {
  return (1.0 - spec.d.array().sqrt()).abs().matrix();
}

/// Which case of the r-based description produced the deviations.
enum class DeviationBranch { BelowOne, StraddleOne, AllOne, Unresolved };

inline std::string_view to_string(DeviationBranch b) {
  switch (b) {
    case DeviationBranch::BelowOne: return "below_one";
    case DeviationBranch::StraddleOne: return "straddle_one";
    case DeviationBranch::AllOne: return "all_one";
    case DeviationBranch::Unresolved: return "unresolved";
  }
  return "?";
}

/// Nonzero deviations described through r, cross-checked against optimal_spectrum.
struct DeviationReport {
  DeviationBranch branch = DeviationBranch::Unresolved;
  std::vector<double> values;     ///< nonzero deviations, sorted non-increasing
  std::vector<double> by_branch;  ///< what the r-based case split yields (empty if unresolved)
  bool discrepancy = false;       ///< branch missing or disagreeing with the d_j route
};

/**
 * @brief Nonzero values of |1 - d_j^{1/2}| computed from r without forming d.
 *
 * Cases (1-based indices):
 *  - r <= m-n+1 and r < n: (1 - lambda_j^{1/2}) for r < j <= n;
 *  - r >  m-n+1:           |lambda_j^{1/2} - 1| for m-n+1 <= j <= n;
 *  - r = n and m-n+1 > n:  none.
 * The split leaves r = n = m-n+1 uncovered, and the first case misses the
 * deviation of d_1 = lambda_r when r = m-n+1 and lambda_r > 1. Whenever the
 * split is silent or disagrees, `values` falls back to the d_j route and
 * `discrepancy` is set.
 */
inline DeviationReport optimal_spectrum_via_r(const RealVector& lambda, Index n) {
  const OptimalSpectrum spec = optimal_spectrum(lambda, n);
  const Index m = lambda.size();
  const Index r = spec.r;
  constexpr double zero_cut = 1e-12;

  auto nonzero_sorted = [](std::vector<double> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return !(x > zero_cut); }), v.end());
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  };

  DeviationReport out;
  std::vector<double> branch_values;
  bool resolved = true;
  if (r <= m - n + 1 && r < n) {
    out.branch = DeviationBranch::BelowOne;
    for (Index j = r + 1; j <= n; ++j) branch_values.push_back(1.0 - std::sqrt(lambda(j - 1)));
  } else if (r > m - n + 1) {
    out.branch = DeviationBranch::StraddleOne;
    for (Index j = m - n + 1; j <= n; ++j) branch_values.push_back(std::abs(std::sqrt(lambda(j - 1)) - 1.0));
  } else if (r == n && m - n + 1 > n) {
    out.branch = DeviationBranch::AllOne;
  } else {
    out.branch = DeviationBranch::Unresolved;
    resolved = false;
  }

  const RealVector dev = deviations(spec);
  const std::vector<double> reference = nonzero_sorted(std::vector<double>(dev.data(), dev.data() + dev.size()));
  out.by_branch = nonzero_sorted(branch_values);

  bool agree = resolved && out.by_branch.size() == reference.size();
  for (std::size_t i = 0; agree && i < reference.size(); ++i) {
    agree = std::abs(out.by_branch[i] - reference[i]) <= zero_cut;
  }
  out.discrepancy = !agree;
  out.values = agree ? out.by_branch : reference;
  return out;
}

/// The optimal spectrum of a frame, from its singular values.
inline OptimalSpectrum optimal_spectrum(const Frame& F) { return optimal_spectrum(gramian_spectrum(F), F.dim()); }

/// Optimal Parseval approximation error Phi((1 - d_j^{1/2})_j) under `norm`.
inline double alpha(const Frame& F, const UINorm& norm) {
  const OptimalSpectrum spec = optimal_spectrum(F);
  return norm.gauge((1.0 - spec.d.array().sqrt()).matrix());
}

/// Schatten-p specialization; p = inf uses max{1 - lambda_n^{1/2}, lambda_{m-n+1}^{1/2} - 1, 0}.
inline double alpha_p(const Frame& F, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(Errc::InvalidP, "alpha_p: p must lie in [1, inf]");
  }
  const RealVector lambda = gramian_spectrum(F);
  const Index n = F.dim();
  const Index m = F.size();
  if (std::isinf(p)) {
    const double low = 1.0 - std::sqrt(lambda(n - 1));
    const double high = std::sqrt(lambda(m - n)) - 1.0;
    return std::max({low, high, 0.0});
  }
  const OptimalSpectrum spec = optimal_spectrum(lambda, n);
  const RealVector dev = deviations(spec);
  return std::pow(dev.array().pow(p).sum(), 1.0 / p);
}

/**
 * @brief Builds a Parseval frame X that is optimal for every unitarily invariant norm.
 *
 * With S chosen so the compression of F*F to S has spectrum d, and the polar
 * decomposition P_S F* = V |P_S F*|, X = V* gives F X* = |P_S F*| >= 0. The
 * norm argument only selects which alpha is reported; X does not depend on it.
 */
inline QuasiDualResult construct(const Frame& F, const UINorm& norm, const Tolerances& tol = {}) {
  QuasiDualResult out;
  out.norm = norm;
  out.spectrum = optimal_spectrum(F);
  const Matrix G = F.gramian();
  out.subspace = build_compression_subspace((G + G.adjoint()) / 2.0, out.spectrum.d, tol);
  const Matrix compressed_analysis = out.subspace.projection() * F.analysis();
  const PolarDecomposition pd = polar(compressed_analysis);
  out.X = pd.V.adjoint();
  out.alpha_value = norm.gauge((1.0 - out.spectrum.d.array().sqrt()).matrix());
  return out;
}

/// lambda_min(S_F) >= 1 and 2n - m <= multiplicity of 1 in the spectrum of S_F.
inline bool parseval_dual_exists(const Frame& F, const Tolerances& tol = {}) {
  const RealVector s = frame_operator_spectrum(F);
  const Index n = F.dim();
  const Index m = F.size();
  if (s(n - 1) < 1.0 - tol.fp) return false;
  const Index ones = static_cast<Index>(((s.array() - 1.0).abs() <= tol.tie).count());
  return 2 * n - m <= ones;
}

/// Oblique projection Q on C^m and isometric embedding of C^n with Q e_i = embedding f_i.
struct Dilation {
  Matrix Q;          ///< m x m idempotent, Q = X* F
  Matrix embedding;  ///< m x n isometry X*
  Matrix X;          ///< the Parseval dual used
};

inline Dilation dilation(const Frame& F, const Tolerances& tol = {}) {
  if (!parseval_dual_exists(F, tol)) {
    throw Error(Errc::NoParsevalDual, "dilation: the frame has no Parseval dual");
  }
  const QuasiDualResult qd = construct(F, UINorm::operator_norm(), tol);
  Dilation out;
  out.X = qd.X;
  out.embedding = qd.X.adjoint();
  out.Q = out.embedding * F.synthesis();
  return out;
}

/// ||F X* - I||, the worst-case reconstruction error analysing with X and synthesising with F.
inline double worst_case_error(const Frame& F, const Frame& X) {
  if (F.dim() != X.dim() || F.size() != X.size()) {
    throw Error(Errc::DimensionMismatch, "worst_case_error: frames have different shapes");
  }
  return op_norm(F.synthesis() * X.synthesis().adjoint() - Matrix::Identity(F.dim(), F.dim()));
}

/// Membership in the set of Parseval quasi-duals for `norm`.
inline bool is_quasidual(const Frame& F, const Frame& X, const UINorm& norm, const Tolerances& tol = {}) {
  if (F.dim() != X.dim() || F.size() != X.size()) {
    throw Error(Errc::DimensionMismatch, "is_quasidual: frames have different shapes");
  }
  if (!is_parseval(X, tol)) {
    throw Error(Errc::NotParseval, "is_quasidual: X X* differs from the identity");
  }
  const Matrix E = F.synthesis() * X.synthesis().adjoint() - Matrix::Identity(F.dim(), F.dim());
  return norm(E) <= alpha(F, norm) + tol.fp;
}

}  // namespace qd
