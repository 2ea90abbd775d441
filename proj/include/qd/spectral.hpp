#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qd/error.hpp"
#include "qd/frame.hpp"

// Closed-form alpha for frames of an infinite-dimensional Hilbert space,
// evaluated on a symbolic description of |F| (singular-value scale):
//
//   - essential spectrum collapsed to its hull [ess_lo, ess_hi],
//   - finitely many eigenvalues above ess_hi and below ess_lo, with multiplicity,
//   - the excess dim N(F), finite or infinite.
//
// For finite excess n the kernel shows up as the eigenvalue 0 with multiplicity
// n in `below`. For infinite excess the kernel is implicit and `below` holds no
// zeros; ess_lo then describes the essential spectrum of |F| off the kernel.

namespace qd::spectral {

struct Eigenvalue {
  double value;
  std::int64_t multiplicity;
};

struct SpectralModel {
  double ess_lo = 0.0;  ///< m_e(F)
  double ess_hi = 0.0;  ///< ||F||_e
  std::vector<Eigenvalue> above;
  std::vector<Eigenvalue> below;
  std::optional<std::int64_t> excess;  ///< nullopt: infinite
  bool cluster_at_me = false;          ///< m_e is a cluster point of eigenvalues of |F|

  bool infinite_excess() const { return !excess.has_value(); }
};

enum class Attainment { Yes, YesWithScalarFXStar, Conditional, Unknown };

inline std::string_view to_string(Attainment a) {
  switch (a) {
    case Attainment::Yes: return "yes";
    case Attainment::YesWithScalarFXStar: return "yes_with_FXstar_scalar";
    case Attainment::Conditional: return "conditional";
    case Attainment::Unknown: return "unknown";
  }
  return "?";
}

struct AlphaReport {
  double alpha = 0.0;
  Attainment attained = Attainment::Unknown;
  std::optional<double> beta;  ///< 1 / (1 - alpha), only when alpha < 1
  std::string branch;
};

namespace detail {

inline std::int64_t count(const std::vector<Eigenvalue>& list) {
  std::int64_t total = 0;
  for (const auto& e : list) total += e.multiplicity;
  return total;
}

// k-th entry (1-based) of the multiset, ordered by `cmp`; nullopt if fewer than k entries.
template <class Compare>
std::optional<double> kth(std::vector<Eigenvalue> list, std::int64_t k, Compare cmp) {
  std::sort(list.begin(), list.end(), [&](const Eigenvalue& a, const Eigenvalue& b) { return cmp(a.value, b.value); });
  for (const auto& e : list) {
    if (k <= e.multiplicity) return e.value;
    k -= e.multiplicity;
  }
  return std::nullopt;
}

inline std::optional<double> beta_of(double alpha) {
  if (alpha < 1.0) return 1.0 / (1.0 - alpha);
  return std::nullopt;
}

}  // namespace detail

/// Throws InvalidModel unless the model describes |F| for a frame.
inline void validate(const SpectralModel& model) {
  auto bad = [](const std::string& why) { throw Error(Errc::InvalidModel, why); };
  if (!std::isfinite(model.ess_lo) || !std::isfinite(model.ess_hi)) bad("non-finite essential spectrum");
  if (model.ess_lo < 0.0) bad("ess_lo must be >= 0");
  if (model.ess_hi < model.ess_lo) bad("ess_hi must be >= ess_lo");
  for (const auto& e : model.above) {
    if (!std::isfinite(e.value) || e.value <= model.ess_hi) bad("eigenvalues in `above` must exceed ess_hi");
    if (e.multiplicity < 1) bad("multiplicities must be >= 1");
  }
  std::int64_t zeros = 0;
  for (const auto& e : model.below) {
    if (!std::isfinite(e.value) || e.value < 0.0 || e.value >= model.ess_lo) {
      bad("eigenvalues in `below` must lie in [0, ess_lo)");
    }
    if (e.multiplicity < 1) bad("multiplicities must be >= 1");
    if (e.value == 0.0) zeros += e.multiplicity;
  }
  if (model.excess) {
    if (*model.excess < 0) bad("excess must be >= 0");
    if (zeros != *model.excess) bad("the eigenvalue 0 in `below` must have multiplicity equal to the excess");
  } else if (zeros != 0) {
    bad("with infinite excess the kernel is implicit; `below` must not list 0");
  }
  if (!(model.ess_lo > 0.0)) bad("ess_lo = 0 leaves no positive lower frame bound");
}

/// n-th largest spectral value of |F| counting multiplicity, or ||F||_e once the
/// eigenvalues above the essential spectrum are exhausted.
inline double u_n(const SpectralModel& model, std::int64_t n) {
  validate(model);
  if (n < 1) throw Error(Errc::InvalidModel, "u_n: n must be >= 1");
  return detail::kth(model.above, n, std::greater<>()).value_or(model.ess_hi);
}

/// n-th smallest spectral value of |F|, or m_e(F) once `below` is exhausted.
inline double l_n(const SpectralModel& model, std::int64_t n) {
  validate(model);
  if (n < 1) throw Error(Errc::InvalidModel, "l_n: n must be >= 1");
  return detail::kth(model.below, n, std::less<>()).value_or(model.ess_lo);
}

/// A_F^{1/2} is the smallest nonzero spectral point, B_F^{1/2} the largest.
inline FrameBounds frame_bounds_model(const SpectralModel& model) {
  validate(model);
  double lo = model.ess_lo;
  for (const auto& e : model.below) {
    if (e.value > 0.0) lo = std::min(lo, e.value);
  }
  double hi = model.ess_hi;
  for (const auto& e : model.above) hi = std::max(hi, e.value);
  return {lo * lo, hi * hi};
}

/// alpha = 1 - min(A_F^{1/2}, 1); an optimal X with F X* = (1 - alpha) I exists.
inline AlphaReport alpha_infinite_excess(const SpectralModel& model) {
  validate(model);
  if (!model.infinite_excess()) {
    throw Error(Errc::WrongExcess, "alpha_infinite_excess: model has finite excess");
  }
  const double root_a = std::sqrt(frame_bounds_model(model).lower);
  AlphaReport out;
  out.alpha = 1.0 - std::min(root_a, 1.0);
  out.attained = Attainment::YesWithScalarFXStar;
  out.beta = std::max(1.0 / root_a, 1.0);
  out.branch = root_a >= 1.0 ? "infinite_excess_parseval_dual" : "infinite_excess";
  return out;
}

/**
 * @brief alpha = min(max(u_{n+1} - 1, 1 - A_F^{1/2}), 1 + m_e) for excess n.
 *
 * The first term is the distance over index-zero compressions, the second the
 * one over negative-index compressions. Attainment: the index-zero branch
 * always has unitary approximants; the negative-index branch is reported as
 * attained only when m_e is flagged as a cluster point of eigenvalues.
 */
inline AlphaReport alpha_finite_excess(const SpectralModel& model) {
  validate(model);
  if (model.infinite_excess()) {
    throw Error(Errc::WrongExcess, "alpha_finite_excess: model has infinite excess");
  }
  const std::int64_t n = *model.excess;
  const double upper = u_n(model, n + 1);
  const double root_a = l_n(model, n + 1);
  const double index_zero = std::max(upper - 1.0, 1.0 - root_a);
  const double negative_index = 1.0 + model.ess_lo;

  AlphaReport out;
  if (index_zero <= negative_index) {
    out.alpha = index_zero;
    out.branch = "index_zero";
    out.attained = Attainment::Yes;
  } else {
    out.alpha = negative_index;
    out.branch = "negative_index";
    out.attained = model.cluster_at_me ? Attainment::Yes : Attainment::Unknown;
  }
  out.beta = detail::beta_of(out.alpha);
  return out;
}

/// Dispatches on the excess.
inline AlphaReport alpha_model(const SpectralModel& model) {
  return model.infinite_excess() ? alpha_infinite_excess(model) : alpha_finite_excess(model);
}

struct AlphaBounds {
  double lower;
  double upper;
};

/// |1 - A^{1/2}| <= alpha <= max(1 - A^{1/2}, B^{1/2} - 1), valid when A < 1, or A > 1 with finite excess.
inline AlphaBounds alpha_bounds(const SpectralModel& model) {
  const FrameBounds fb = frame_bounds_model(model);
  const double root_a = std::sqrt(fb.lower);
  const double root_b = std::sqrt(fb.upper);
  const bool below = fb.lower < 1.0;
  const bool above_finite = fb.lower > 1.0 && !model.infinite_excess();
  if (!below && !above_finite) {
    throw Error(Errc::HypothesisNotMet, "alpha_bounds: requires A_F < 1, or A_F > 1 with finite excess");
  }
  return {std::abs(1.0 - root_a), std::max(1.0 - root_a, root_b - 1.0)};
}

/**
 * @brief Sufficient conditions for alpha = 1 - A^{1/2} with the infimum attained (A < 1).
 *
 * Condition 1, dim R(S_F - A I) <= dim N(F), counts spectral points of |F| off
 * the kernel that differ from A^{1/2}; an essential spectrum other than the
 * single point A^{1/2} counts as infinitely many. Condition 2 is
 * A^{1/2} + B^{1/2} <= 2.
 */
inline bool attainment_conditions(const SpectralModel& model) {
  const FrameBounds fb = frame_bounds_model(model);
  if (!(fb.lower < 1.0)) {
    throw Error(Errc::HypothesisNotMet, "attainment_conditions: requires A_F < 1");
  }
  const double root_a = std::sqrt(fb.lower);
  const double root_b = std::sqrt(fb.upper);

  bool condition1 = model.infinite_excess();
  if (!condition1) {
    const bool ess_is_point = model.ess_lo == model.ess_hi && model.ess_lo == root_a;
    if (ess_is_point) {
      std::int64_t off = detail::count(model.above);
      for (const auto& e : model.below) {
        if (e.value > 0.0 && e.value != root_a) off += e.multiplicity;
      }
      condition1 = off <= *model.excess;
    }
  }
  const bool condition2 = root_a + root_b <= 2.0;
  return condition1 || condition2;
}

/// Fredholm index: an integer or +/- infinity.
struct FredholmIndex {
  enum class Kind { Finite, PlusInfinity, MinusInfinity };
  Kind kind = Kind::Finite;
  std::int64_t value = 0;

  static FredholmIndex finite(std::int64_t v) { return {Kind::Finite, v}; }
  static FredholmIndex plus_infinity() { return {Kind::PlusInfinity, 0}; }
  static FredholmIndex minus_infinity() { return {Kind::MinusInfinity, 0}; }

  int sign() const {
    switch (kind) {
      case Kind::PlusInfinity: return 1;
      case Kind::MinusInfinity: return -1;
      case Kind::Finite: return value > 0 ? 1 : (value < 0 ? -1 : 0);
    }
    return 0;
  }
};

/**
 * @brief Distance from T to the unitary group.
 *
 * index 0: max(||T|| - 1, 1 - m(T)); index != 0: max(||T|| - 1, 1 + m_e), where
 * for positive index the caller supplies m_e of T*.
 */
inline double rogers_distance(double norm_t, double m_t, double m_e_t, FredholmIndex index) {
  const bool ordered = std::isfinite(norm_t) && std::isfinite(m_t) && std::isfinite(m_e_t) && 0.0 <= m_t &&
                       m_t <= m_e_t && m_e_t <= norm_t;
  if (!ordered) {
    throw Error(Errc::InvalidSpectralData, "rogers_distance: need 0 <= m(T) <= m_e(T) <= ||T||");
  }
  if (index.sign() == 0) return std::max(norm_t - 1.0, 1.0 - m_t);
  return std::max(norm_t - 1.0, 1.0 + m_e_t);
}

/// For a frame with A^{1/2} + B^{1/2} <= 2 and condition 1 of attainment: the two
/// quasi-duals Y (F Y* = A^{1/2} I) and W (polar factor of F) are at distances
/// (B + 1 - 2 A^{1/2})^{1/2} and max(1 - A^{1/2}, B^{1/2} - 1) from F.
struct QuasiDualDistances {
  double scalar_pair;
  double polar_factor;
};

inline QuasiDualDistances quasidual_distances(const SpectralModel& model) {
  const FrameBounds fb = frame_bounds_model(model);
  const double root_a = std::sqrt(fb.lower);
  const double root_b = std::sqrt(fb.upper);
  return {std::sqrt(std::max(0.0, fb.upper + 1.0 - 2.0 * root_a)), std::max(1.0 - root_a, root_b - 1.0)};
}

}  // namespace qd::spectral
