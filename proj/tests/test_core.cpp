#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spopt/core.hpp"
#include "spopt/errors.hpp"

namespace {

using spopt::Matrix;
using spopt::testing::dense_j;
using spopt::testing::random_matrix;

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(Jmul, Identity) {
  EXPECT_EQ(spopt::jmul(Matrix::Identity(2, 2)), mat2(0, 1, -1, 0));
}

TEST(Jmul, SquareIsNegation) {
  EXPECT_EQ(spopt::jmul(mat2(0, 1, -1, 0)), -Matrix::Identity(2, 2));
  std::mt19937_64 gen(1);
  const Matrix a = random_matrix(6, 2, gen);
  EXPECT_EQ(spopt::jmul(spopt::jmul(a)), -a);
  // Dense-multiplication oracle.
  EXPECT_EQ(spopt::jmul(a), dense_j(6) * a);
}

TEST(Jmul, OddRowsRejected) {
  EXPECT_THROW(spopt::jmul(Matrix::Zero(5, 2)), spopt::DimensionError);
  EXPECT_THROW(spopt::jtmul(Matrix::Zero(1, 1)), spopt::DimensionError);
}

TEST(Jtmul, Examples) {
  EXPECT_EQ(spopt::jtmul(Matrix::Identity(2, 2)), mat2(0, -1, 1, 0));
  std::mt19937_64 gen(2);
  const Matrix a = random_matrix(4, 4, gen);
  EXPECT_EQ(spopt::jtmul(a) + spopt::jmul(a), Matrix::Zero(4, 4));
  EXPECT_EQ(spopt::jtmul(a), (-dense_j(4)) * a);
}

TEST(MulJ, MatchesDense) {
  std::mt19937_64 gen(3);
  const Matrix a = random_matrix(5, 6, gen);
  EXPECT_EQ(spopt::mul_j(a), a * dense_j(6));
}

TEST(SkewPart, Examples) {
  EXPECT_EQ(spopt::skew_part(mat2(1, 2, 2, 3)), Matrix::Zero(2, 2));
  EXPECT_EQ(spopt::skew_part(mat2(0, 1, 0, 0)), mat2(0, 0.5, -0.5, 0));
  EXPECT_THROW(spopt::skew_part(Matrix::Zero(2, 3)), spopt::DimensionError);
}

TEST(SkewPart, SplitsEverySquareMatrix) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_matrix(1 + trial % 9, 1 + trial % 9, gen);
    const Matrix s = spopt::skew_part(a);
    EXPECT_EQ(s + s.transpose(), Matrix::Zero(a.rows(), a.cols()));
    EXPECT_LE((s + spopt::sym_part(a) - a).norm(), 1e-15 * a.norm());
  }
}

TEST(FrobInner, Examples) {
  EXPECT_EQ(spopt::frob_inner(Matrix::Identity(2, 2), Matrix::Identity(2, 2)), 2.0);
  std::mt19937_64 gen(5);
  const Matrix a = random_matrix(7, 3, gen);
  const Matrix b = random_matrix(7, 3, gen);
  EXPECT_NEAR(spopt::frob_inner(a, a), a.squaredNorm(), 1e-12);
  double elementwise = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) elementwise += a.data()[i] * b.data()[i];
  EXPECT_NEAR(spopt::frob_inner(a, b), elementwise, 1e-12);
}

TEST(CanonicalBasePoint, Examples) {
  EXPECT_EQ(spopt::canonical_base_point(1, 1), Matrix::Identity(2, 2));
  const Matrix e = spopt::canonical_base_point(2, 1);
  const Matrix id = Matrix::Identity(4, 4);
  Matrix expect(4, 2);
  expect << id.col(0), id.col(2);
  EXPECT_EQ(e, expect);
  const Matrix e32 = spopt::canonical_base_point(3, 2);
  EXPECT_EQ(e32.transpose() * dense_j(6) * e32, dense_j(4));
  EXPECT_THROW(spopt::canonical_base_point(2, 3), spopt::DimensionError);
}

TEST(SymplecticityResidual, BasePointIsFeasibleForAllSmallDims) {
  for (int n = 1; n <= 20; ++n)
    for (int p = 1; p <= n; ++p)
      EXPECT_EQ(spopt::symplecticity_residual(spopt::canonical_base_point(n, p)), 0.0);
}

TEST(SymplecticityResidual, ScaledPoint) {
  for (int p = 1; p <= 3; ++p) {
    const Matrix x = 2.0 * spopt::canonical_base_point(4, p);
    EXPECT_NEAR(spopt::symplecticity_residual(x), 3.0 * std::sqrt(2.0 * p), 1e-14);
  }
}

TEST(SymplecticityResidual, BadShapes) {
  EXPECT_THROW(spopt::symplecticity_residual(Matrix::Zero(3, 2)), spopt::DimensionError);
  EXPECT_THROW(spopt::symplecticity_residual(Matrix::Zero(4, 3)), spopt::DimensionError);
  EXPECT_THROW(spopt::symplecticity_residual(Matrix::Zero(2, 4)), spopt::DimensionError);
}

TEST(EigSym, Diagonal) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  const auto eig = spopt::eig_sym(m);
  EXPECT_EQ(eig.lambda(0), 1.0);
  EXPECT_EQ(eig.lambda(1), 3.0);
  EXPECT_EQ(eig.q.cwiseAbs(), mat2(0, 1, 1, 0));
}

TEST(EigSym, TwoByTwoByHand) {
  // det([[2-l, 1], [1, 2-l]]) = (l - 1)(l - 3)
  const auto eig = spopt::eig_sym(mat2(2, 1, 1, 2));
  EXPECT_NEAR(eig.lambda(0), 1.0, 1e-15);
  EXPECT_NEAR(eig.lambda(1), 3.0, 1e-15);
}

TEST(EigSym, ShiftedGramHasEigenvaluesAboveOne) {
  std::mt19937_64 gen(6);
  const auto eig = spopt::eig_sym(spopt::testing::random_spd(12, gen));
  EXPECT_GE(eig.lambda.minCoeff(), 1.0 - 1e-12);
}

TEST(EigSym, FactorizationPropertyOnRandomSpd) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> dim_dist(1, 40);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = dim_dist(gen);
    const Matrix m = spopt::testing::random_spd(dim, gen);
    const auto eig = spopt::eig_sym(m);
    const Matrix recon = eig.q * eig.lambda.asDiagonal() * eig.q.transpose();
    ASSERT_LE((recon - m).norm(), 1e-10 * m.norm()) << "dim " << dim;
    ASSERT_LE((eig.q.transpose() * eig.q - Matrix::Identity(dim, dim)).norm(), 1e-12 * dim);
    for (int i = 1; i < dim; ++i) ASSERT_LE(eig.lambda(i - 1), eig.lambda(i));
  }
}

TEST(EigSym, Errors) {
  EXPECT_THROW(spopt::eig_sym(Matrix::Zero(2, 3)), spopt::DimensionError);
  EXPECT_THROW(spopt::eig_sym(mat2(1, 2, 0, 1)), spopt::ContractViolation);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(spopt::eig_sym(bad), spopt::ParameterError);
}

TEST(RequireFinite, RejectsInfinity) {
  Matrix m = Matrix::Zero(2, 2);
  EXPECT_NO_THROW(spopt::require_finite(m, "m"));
  m(1, 0) = INFINITY;
  EXPECT_THROW(spopt::require_finite(m, "m"), spopt::ParameterError);
}

}  // namespace
