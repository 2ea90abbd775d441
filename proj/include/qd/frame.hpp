#pragma once

#include <string>
#include <vector>

#include "qd/error.hpp"
#include "qd/linalg.hpp"
#include "qd/tolerances.hpp"

namespace qd {

/// Optimal frame bounds: A ||f||^2 <= sum |<f, f_i>|^2 <= B ||f||^2.
struct FrameBounds {
  double lower;
  double upper;
};

/**
 * @brief A finite frame {f_i}_{i=1..m} for C^n, stored by its n x m synthesis matrix.
 *
 * The i-th column of the synthesis matrix is f_i. Construction validates that
 * the columns span C^n; zero vectors are allowed.
 */
class Frame {
 public:
  explicit Frame(Matrix synthesis) : synthesis_(std::move(synthesis)) {
    detail::require_nonempty_finite(synthesis_, "Frame");
    if (synthesis_.cols() < synthesis_.rows()) {
      throw Error(Errc::NotAFrame, "fewer vectors (" + std::to_string(synthesis_.cols()) +
                                       ") than the dimension (" + std::to_string(synthesis_.rows()) + ")");
    }
    if (numerical_rank(synthesis_) < synthesis_.rows()) {
      throw Error(Errc::NotAFrame, "vectors do not span C^" + std::to_string(synthesis_.rows()));
    }
  }

  static Frame from_vectors(const std::vector<Vector>& vectors) {
    if (vectors.empty()) {
      throw Error(Errc::NotAFrame, "empty vector family");
    }
    const Index n = vectors.front().size();
    if (n < 1) {
      throw Error(Errc::DimensionMismatch, "vectors must have length >= 1");
    }
    Matrix F(n, static_cast<Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != n) {
        throw Error(Errc::DimensionMismatch, "vector " + std::to_string(i) + " has length " +
                                                 std::to_string(vectors[i].size()) + ", expected " +
                                                 std::to_string(n));
      }
      F.col(static_cast<Index>(i)) = vectors[i];
    }
    return Frame(std::move(F));
  }

  Index dim() const { return synthesis_.rows(); }
  Index size() const { return synthesis_.cols(); }

  const Matrix& synthesis() const { return synthesis_; }
  Matrix analysis() const { return synthesis_.adjoint(); }
  /// S_F = F F*.
  Matrix frame_operator() const { return synthesis_ * synthesis_.adjoint(); }
  /// F* F.
  Matrix gramian() const { return synthesis_.adjoint() * synthesis_; }
  Vector vector(Index i) const { return synthesis_.col(i); }

 private:
  Matrix synthesis_;
};

inline FrameBounds frame_bounds(const Frame& F) {
  const double lo = gamma(F.synthesis());
  const double hi = op_norm(F.synthesis());
  return {lo * lo, hi * hi};
}

/// dim N(F) = m - n.
inline Index excess(const Frame& F) { return F.size() - F.dim(); }

/// Eigenvalues of S_F, non-increasing (squares of the singular values of F).
inline RealVector frame_operator_spectrum(const Frame& F) { return singular_values(F.synthesis()).array().square(); }

/// Eigenvalues of the Gramian F*F, non-increasing, length m: the frame operator
/// spectrum padded with m - n zeros.
inline RealVector gramian_spectrum(const Frame& F) {
  RealVector lambda = RealVector::Zero(F.size());
  lambda.head(F.dim()) = frame_operator_spectrum(F);
  return lambda;
}

/// {S_F^{-1} f_i}; its synthesis matrix is (F^+)*.
inline Frame canonical_dual(const Frame& F) {
  const SingularValueDecomposition d = svd(F.synthesis());
  const RealVector inv = d.s.cwiseInverse();
  return Frame(d.U * inv.cast<Complex>().asDiagonal() * d.V.adjoint());
}

inline bool is_dual_pair(const Frame& F, const Frame& G, const Tolerances& tol = {}) {
  if (F.dim() != G.dim() || F.size() != G.size()) {
    throw Error(Errc::DimensionMismatch, "is_dual_pair: frames have different shapes");
  }
  const Matrix R = F.synthesis() * G.synthesis().adjoint() - Matrix::Identity(F.dim(), F.dim());
  return op_norm(R) <= tol.dual;
}

/// ||F F* - I||.
inline double parseval_residual(const Frame& F) {
  return op_norm(F.frame_operator() - Matrix::Identity(F.dim(), F.dim()));
}

inline bool is_parseval(const Frame& F, const Tolerances& tol = {}) { return parseval_residual(F) <= tol.dual; }

}  // namespace qd
