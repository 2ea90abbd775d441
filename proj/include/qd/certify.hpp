#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "qd/error.hpp"
#include "qd/frame.hpp"
#include "qd/linalg.hpp"
#include "qd/quasidual.hpp"
#include "qd/tolerances.hpp"
#include "qd/uin.hpp"

// Randomized lower-envelope check of alpha: sample Haar coisometries, evaluate
// |||F Y* - I|||, and refine the best sample locally on the coisometry manifold.
// Sample k draws from a generator seeded by (seed, k) alone, so the report does
// not depend on how the work is split across threads.

namespace qd {

struct CertificationReport {
  std::int64_t samples = 0;      ///< random coisometries drawn
  std::int64_t evaluations = 0;  ///< samples plus refinement candidates
  double min_error_sampled = std::numeric_limits<double>::infinity();
  double alpha_claimed = 0.0;
  std::int64_t violations = 0;
  std::uint64_t seed = 0;
  UINorm norm = UINorm::operator_norm();
  double tolerance = 0.0;

  bool passed() const { return violations == 0; }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

inline Matrix complex_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix G(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      G(i, j) = Complex(re, im);
    }
  }
  return G;
}

inline Matrix coisometry_from(std::mt19937_64& rng, Index n, Index m) {
  return orthonormalize_rows(complex_gaussian(n, m, rng));
}

}  // namespace detail

/// n x m coisometry with Haar-distributed row space; deterministic in `seed`.
inline Matrix sample_coisometry(Index n, Index m, std::uint64_t seed) {
  if (n < 1 || m < n) {
    throw Error(Errc::DimensionMismatch, "sample_coisometry: need 1 <= n <= m");
  }
  std::mt19937_64 rng(seed);
  return detail::coisometry_from(rng, n, m);
}

/// |||F Y* - I|||.
inline double reconstruction_error(const Frame& F, const Matrix& Y, const UINorm& norm) {
  return norm(F.synthesis() * Y.adjoint() - Matrix::Identity(F.dim(), F.dim()));
}

struct RefinementResult {
  Matrix Y;
  double error;
  std::vector<double> evaluated;  ///< error of every candidate tried
};

/// Greedy local search: perturb by step * Gaussian, re-orthonormalize rows,
/// accept on improvement, halve the step on failure.
inline RefinementResult refine(const Frame& F, const UINorm& norm, Matrix start, std::uint64_t seed, int steps = 50,
                               double step = 0.1) {
  std::mt19937_64 rng(seed);
  RefinementResult out{std::move(start), 0.0, {}};
  out.error = reconstruction_error(F, out.Y, norm);
  for (int it = 0; it < steps; ++it) {
    const Matrix candidate = orthonormalize_rows(out.Y + step * detail::complex_gaussian(out.Y.rows(), out.Y.cols(), rng));
    const double err = reconstruction_error(F, candidate, norm);
    out.evaluated.push_back(err);
    if (err < out.error) {
      out.Y = candidate;
      out.error = err;
    } else {
      step *= 0.5;
    }
  }
  return out;
}

/**
 * @brief Empirical check that no coisometry beats alpha(F, norm).
 *
 * Draws `samples` coisometries (in parallel when worthwhile), refines the best
 * one, and counts every evaluated point with error below alpha - tol.cert.
 */
inline CertificationReport certify_alpha(const Frame& F, const UINorm& norm, std::int64_t samples, std::uint64_t seed,
                                         const Tolerances& tol = {}, unsigned threads = 0) {
  if (samples < 1) {
    throw Error(Errc::InvalidArgument, "certify_alpha: samples must be >= 1");
  }
  CertificationReport report;
  report.samples = samples;
  report.seed = seed;
  report.norm = norm;
  report.tolerance = tol.cert;
  report.alpha_claimed = alpha(F, norm);
  const double floor = report.alpha_claimed - tol.cert;

  std::vector<double> errors(static_cast<std::size_t>(samples));
  auto work = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t k = begin; k < end; ++k) {
      std::mt19937_64 rng(detail::stream_seed(seed, static_cast<std::uint64_t>(k)));
      errors[static_cast<std::size_t>(k)] = reconstruction_error(F, detail::coisometry_from(rng, F.dim(), F.size()), norm);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::int64_t workers = std::min<std::int64_t>(threads, std::max<std::int64_t>(1, samples / 256));
  if (workers <= 1) {
    work(0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (samples + workers - 1) / workers;
    for (std::int64_t w = 0; w < workers; ++w) {
      const std::int64_t begin = w * chunk;
      const std::int64_t end = std::min(samples, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  std::int64_t best = 0;
  for (std::int64_t k = 0; k < samples; ++k) {
    const double e = errors[static_cast<std::size_t>(k)];
    if (e < floor) ++report.violations;
    if (e < errors[static_cast<std::size_t>(best)]) best = k;
  }

  std::mt19937_64 rng(detail::stream_seed(seed, static_cast<std::uint64_t>(best)));
  const Matrix start = detail::coisometry_from(rng, F.dim(), F.size());
  const RefinementResult refined =
      refine(F, norm, start, detail::stream_seed(seed, std::numeric_limits<std::uint64_t>::max()));
  for (double e : refined.evaluated) {
    if (e < floor) ++report.violations;
  }
  report.evaluations = samples + static_cast<std::int64_t>(refined.evaluated.size());
  report.min_error_sampled = std::min(errors[static_cast<std::size_t>(best)], refined.error);
  return report;
}

}  // namespace qd
