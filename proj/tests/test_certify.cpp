#include <gtest/gtest.h>

#include <random>

#include "qd/certify.hpp"
#include "support.hpp"

namespace qd {
namespace {

Frame fixture(std::vector<double> s, Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return test::frame_with_spectrum(s, m, rng);
}

TEST(SampleCoisometry, Shapes) {
  const Matrix U = sample_coisometry(3, 3, 1);
  EXPECT_LE((U * U.adjoint() - Matrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LE((U.adjoint() * U - Matrix::Identity(3, 3)).norm(), 1e-12);
  const Matrix row = sample_coisometry(1, 2, 2);
  EXPECT_NEAR(row.norm(), 1.0, 1e-12);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Matrix X = sample_coisometry(1 + seed % 4, 4 + seed % 5, seed);
    EXPECT_LE((X * X.adjoint() - Matrix::Identity(X.rows(), X.rows())).norm(), 1e-12);
  }
  EXPECT_THROW(sample_coisometry(3, 2, 0), Error);
}

TEST(SampleCoisometry, Deterministic) {
  EXPECT_EQ(sample_coisometry(2, 5, 42), sample_coisometry(2, 5, 42));
  EXPECT_NE(sample_coisometry(2, 5, 42), sample_coisometry(2, 5, 43));
}

TEST(SampleCoisometry, RowSpaceLooksHaar) {
  // For a Haar n-dimensional row space in C^m, E|X_ij|^2 = 1/m.
  double total = 0.0;
  const int draws = 4000;
  for (int k = 0; k < draws; ++k) total += std::norm(sample_coisometry(2, 5, static_cast<std::uint64_t>(k))(0, 3));
  EXPECT_NEAR(total / draws, 1.0 / 5.0, 0.01);
}

TEST(CertifyAlpha, ParsevalFloor) {
  std::mt19937_64 rng(1);
  const Frame P(test::random_unitary(5, rng).topRows(3));
  for (const auto& norm : test::all_norms()) {
    const auto rep = certify_alpha(P, norm, 100, 7);
    EXPECT_TRUE(rep.passed());
    EXPECT_GE(rep.min_error_sampled, 0.0);
    EXPECT_NEAR(rep.alpha_claimed, 0.0, 1e-12);
    EXPECT_NEAR(reconstruction_error(P, construct(P, norm).X, norm), 0.0, 1e-10);
  }
}

TEST(CertifyAlpha, FixturesHoldAgainstTenThousandSamples) {
  const Frame small = fixture({0.25, 0.16}, 3, 1);
  const auto a = certify_alpha(small, UINorm::parse("sinf"), 10000, 11);
  EXPECT_EQ(a.violations, 0);
  EXPECT_GE(a.min_error_sampled, 0.6 - 1e-8);
  EXPECT_EQ(a.samples, 10000);
  EXPECT_EQ(a.evaluations, 10050);

  const Frame big = fixture({9, 4}, 3, 2);
  const auto b = certify_alpha(big, UINorm::schatten(1), 10000, 12);
  EXPECT_EQ(b.violations, 0);
  EXPECT_GE(b.min_error_sampled, 1.0 - 1e-8);
}

TEST(CertifyAlpha, IndependentOfThreadCount) {
  const Frame F = fixture({2.0, 0.5}, 4, 3);
  const auto one = certify_alpha(F, UINorm::schatten(2), 2000, 5, {}, 1);
  const auto many = certify_alpha(F, UINorm::schatten(2), 2000, 5, {}, 8);
  EXPECT_EQ(one.min_error_sampled, many.min_error_sampled);
  EXPECT_EQ(one.violations, many.violations);
  const auto again = certify_alpha(F, UINorm::schatten(2), 2000, 5, {}, 3);
  EXPECT_EQ(one.min_error_sampled, again.min_error_sampled);
}

TEST(CertifyAlpha, CountsViolationsAgainstAnInflatedClaim) {
  const Frame F = fixture({2.0, 0.5}, 4, 4);
  Tolerances tol;
  tol.cert = -10.0;  // every error lies below alpha + 10
  const auto rep = certify_alpha(F, UINorm::operator_norm(), 300, 1, tol);
  EXPECT_EQ(rep.violations, rep.evaluations);
  EXPECT_FALSE(rep.passed());
  EXPECT_THROW(certify_alpha(F, UINorm::operator_norm(), 0, 1), Error);
}

TEST(Refine, StaysAtAlphaFromTheConstruction) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const Frame F = test::random_frame(2 + t % 2, 3 + t % 4, rng);
    for (const auto& norm : {UINorm::schatten(1), UINorm::schatten(2), UINorm::parse("sinf"), UINorm::kyfan(2)}) {
      const double a = alpha(F, norm);
      const auto res = refine(F, norm, construct(F, norm).X, static_cast<std::uint64_t>(t));
      EXPECT_NEAR(res.error, a, 1e-10);
      for (double e : res.evaluated) EXPECT_GE(e, a - 1e-8);
    }
  }
}

TEST(Refine, ImprovesFromARandomStart) {
  const Frame F = fixture({3.0, 0.2}, 4, 6);
  const auto norm = UINorm::schatten(2);
  const Matrix start = sample_coisometry(2, 4, 9);
  const auto res = refine(F, norm, start, 3);
  EXPECT_LE(res.error, reconstruction_error(F, start, norm));
  EXPECT_GE(res.error, alpha(F, norm) - 1e-8);
  EXPECT_EQ(res.evaluated.size(), 50u);
}

}  // namespace
}  // namespace qd
