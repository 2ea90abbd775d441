#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qd/linalg.hpp"
#include "qd/uin.hpp"
#include "support.hpp"

namespace qd {
namespace {

Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix M(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double x : row) M(i, j++) = x;
    ++i;
  }
  return M;
}

void expect_reconstructs(const Matrix& H, const EigenDecomposition& e) {
  const Index n = H.rows();
  EXPECT_LE((e.vectors.adjoint() * e.vectors - Matrix::Identity(n, n)).norm(), 1e-12);
  const Matrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  EXPECT_LE((back - H).norm(), 1e-10 * std::max(1.0, H.norm()));
  for (Index i = 0; i + 1 < n; ++i) EXPECT_GE(e.values(i), e.values(i + 1));
}

TEST(HermitianEigen, Identity) {
  const Matrix I = Matrix::Identity(3, 3);
  const auto e = hermitian_eigen(I);
  EXPECT_NEAR((e.values - RealVector::Ones(3)).norm(), 0.0, 1e-15);
  expect_reconstructs(I, e);
}

TEST(HermitianEigen, DiagonalReordered) {
  const Matrix D = real_matrix({{1, 0, 0}, {0, 4, 0}, {0, 0, 9}});
  const auto e = hermitian_eigen(D);
  EXPECT_DOUBLE_EQ(e.values(0), 9.0);
  EXPECT_DOUBLE_EQ(e.values(1), 4.0);
  EXPECT_DOUBLE_EQ(e.values(2), 1.0);
}

TEST(HermitianEigen, TwoByTwoMatchesCharacteristicPolynomial) {
  // det([[2-x,1],[1,2-x]]) = (2-x)^2 - 1, roots 2 +- 1.
  const Matrix H = real_matrix({{2, 1}, {1, 2}});
  const double tr = 4.0, det = 3.0;
  const double disc = std::sqrt(tr * tr / 4.0 - det);
  const auto e = hermitian_eigen(H);
  EXPECT_NEAR(e.values(0), tr / 2 + disc, 1e-14);
  EXPECT_NEAR(e.values(1), tr / 2 - disc, 1e-14);
  expect_reconstructs(H, e);
}

TEST(HermitianEigen, ComplexEntries) {
  Matrix H(2, 2);
  H << 1.0, Complex(0, 2), Complex(0, -2), 1.0;  // eigenvalues 3, -1
  const auto e = hermitian_eigen(H);
  EXPECT_NEAR(e.values(0), 3.0, 1e-14);
  EXPECT_NEAR(e.values(1), -1.0, 1e-14);
  expect_reconstructs(H, e);
}

TEST(HermitianEigen, RejectsNonHermitian) {
  const Matrix M = real_matrix({{1, 2}, {0, 1}});
  try {
    hermitian_eigen(M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotHermitian);
  }
  EXPECT_THROW(hermitian_eigen(Matrix(2, 3)), Error);
}

TEST(HermitianEigen, RecoversPlantedSpectrum) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 12;
    RealVector lambda(n);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (Index i = 0; i < n; ++i) lambda(i) = u(rng);
    if (trial % 5 == 0 && n > 2) lambda(1) = lambda(0);  // repeated eigenvalue
    std::sort(lambda.data(), lambda.data() + n, std::greater<>());
    const Matrix V = test::random_unitary(n, rng);
    const Matrix H = V * lambda.cast<Complex>().asDiagonal() * V.adjoint();
    const auto e = hermitian_eigen((H + H.adjoint()) / 2.0);
    for (Index i = 0; i < n; ++i) {
      EXPECT_NEAR(e.values(i), lambda(i), 1e-9 * std::max(1.0, std::abs(lambda(i))));
    }
    expect_reconstructs(H, e);
  }
}

TEST(HermitianEigen, AgreesWithEigenOnRandomMatrices) {
  std::mt19937_64 rng(5);
  for (Index n : {2, 5, 16, 40}) {
    const Matrix G = test::gaussian(n, n, rng);
    const Matrix H = G + G.adjoint();
    const auto e = hermitian_eigen(H);
    EXPECT_LE((e.values - test::oracle_eigenvalues(H)).cwiseAbs().maxCoeff(), 1e-10 * H.norm());
    expect_reconstructs(H, e);
  }
}

TEST(Svd, ZeroMatrix) {
  const auto d = svd(Matrix::Zero(2, 3));
  ASSERT_EQ(d.s.size(), 2);
  EXPECT_EQ(d.s(0), 0.0);
  EXPECT_EQ(d.s(1), 0.0);
}

TEST(Svd, SignAndPermutation) {
  const auto d = svd(real_matrix({{3, 0}, {0, -4}}));
  EXPECT_NEAR(d.s(0), 4.0, 1e-15);
  EXPECT_NEAR(d.s(1), 3.0, 1e-15);
}

TEST(Svd, ShearMatchesQuadraticFormula) {
  // M*M = [[1,1],[1,2]], eigenvalues (3 +- sqrt 5)/2.
  const Matrix M = real_matrix({{1, 1}, {0, 1}});
  const double big = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);
  const double small = std::sqrt((3.0 - std::sqrt(5.0)) / 2.0);
  const auto d = svd(M);
  EXPECT_NEAR(d.s(0), big, 1e-14);
  EXPECT_NEAR(d.s(1), small, 1e-14);
  EXPECT_LE((d.U * d.s.cast<Complex>().asDiagonal() * d.V.adjoint() - M).norm(), 1e-14);
}

TEST(Svd, RandomRectangularReconstructs) {
  std::mt19937_64 rng(3);
  for (auto [r, c] : {std::pair<Index, Index>{3, 7}, {7, 3}, {4, 4}}) {
    const Matrix M = test::gaussian(r, c, rng);
    const auto d = svd(M);
    EXPECT_LE((d.U * d.s.cast<Complex>().asDiagonal() * d.V.adjoint() - M).norm(), 1e-12);
    EXPECT_LE((d.U.adjoint() * d.U - Matrix::Identity(d.U.cols(), d.U.cols())).norm(), 1e-12);
    EXPECT_LE((d.V.adjoint() * d.V - Matrix::Identity(d.V.cols(), d.V.cols())).norm(), 1e-12);
    EXPECT_LE((d.s - test::oracle_singular_values(M)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Polar, UnitaryIsItsOwnFactor) {
  std::mt19937_64 rng(1);
  const Matrix U = test::random_unitary(3, rng);
  const auto p = polar(U);
  EXPECT_LE((p.V - U).norm(), 1e-12);
  EXPECT_LE((p.P - Matrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(Polar, Scaling) {
  const Matrix twice = 2.0 * Matrix::Identity(2, 2);
  const auto p = polar(twice);
  EXPECT_LE((p.V - Matrix::Identity(2, 2)).norm(), 1e-14);
  EXPECT_LE((p.P - 2.0 * Matrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(Polar, TallIsometry) {
  const Matrix M = real_matrix({{0, 1}, {1, 0}, {0, 0}});
  const auto p = polar(M);
  EXPECT_LE((p.V - M).norm(), 1e-14);
  EXPECT_LE((p.P - Matrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(Polar, RandomTallFactorization) {
  std::mt19937_64 rng(8);
  const Matrix M = test::gaussian(6, 3, rng);
  const auto p = polar(M);
  EXPECT_LE((p.V * p.P - M).norm(), 1e-12);
  EXPECT_LE((p.V.adjoint() * p.V - Matrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LE((p.P * p.P - M.adjoint() * M).norm(), 1e-11);
  EXPECT_GT(test::oracle_eigenvalues(p.P).minCoeff(), 0.0);
}

TEST(Polar, RankDeficient) {
  try {
    polar(real_matrix({{1, 2}, {2, 4}, {0, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankDeficient);
  }
  const Matrix wide = Matrix::Ones(2, 3);
  EXPECT_THROW(polar(wide), Error);
}

TEST(Norms, DiagonalWithZero) {
  const Matrix M = real_matrix({{3, 0}, {0, 0}});
  EXPECT_DOUBLE_EQ(op_norm(M), 3.0);
  EXPECT_DOUBLE_EQ(gamma(M), 3.0);
  EXPECT_DOUBLE_EQ(gamma(Matrix::Identity(4, 4)), 1.0);
  EXPECT_EQ(gamma(Matrix::Zero(2, 2)), 0.0);
}

TEST(Norms, GammaIsInverseNormOfInverse) {
  const Matrix M = real_matrix({{1, 1}, {0, 1}});
  const Matrix inv = real_matrix({{1, -1}, {0, 1}});
  ASSERT_LE((M * inv - Matrix::Identity(2, 2)).norm(), 0.0);
  // ||inv|| from the 2x2 quadratic formula on inv* inv = [[1,-1],[-1,2]].
  const double inv_norm = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);
  EXPECT_NEAR(gamma(M), 1.0 / inv_norm, 1e-14);
}

TEST(Norms, GammaBelowNormAndAdjointInvariance) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const Matrix M = test::gaussian(1 + t % 4, 1 + (t / 4) % 5, rng);
    EXPECT_LE(gamma(M), op_norm(M));
    const RealVector a = singular_values(M);
    const RealVector b = singular_values(M.adjoint());
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(FanHoffman, PolarFactorIsNearestAndFarthestUnitary) {
  std::mt19937_64 rng(99);
  const auto norms = test::all_norms();
  for (int t = 0; t < 5; ++t) {
    const Index n = 2 + t;
    const Matrix A = test::gaussian(n, n, rng);
    const Matrix U = polar(A).V;
    for (int k = 0; k < 100; ++k) {
      const Matrix W = test::random_unitary(n, rng);
      for (const auto& norm : norms) {
        const double near = norm(A - U);
        const double mid = norm(A - W);
        const double far = norm(A + U);
        EXPECT_LE(near, mid + 1e-10);
        EXPECT_LE(mid, far + 1e-10);
      }
    }
  }
}

TEST(Orthonormalize, RowsOfCoisometry) {
  std::mt19937_64 rng(4);
  const Matrix X = orthonormalize_rows(test::gaussian(3, 7, rng));
  EXPECT_LE((X * X.adjoint() - Matrix::Identity(3, 3)).norm(), 1e-14);
}

}  // namespace
}  // namespace qd
