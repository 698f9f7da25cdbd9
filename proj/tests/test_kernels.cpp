#include <gtest/gtest.h>
#include <omp.h>

#include <random>

#include "oracles.hpp"
#include "spopt/errors.hpp"
#include "spopt/kernels.hpp"

namespace {

using spopt::Matrix;
namespace serial = spopt::kernels::serial;
namespace parallel = spopt::kernels::parallel;

TEST(Kernels, ParallelMatchesSerial) {
  std::mt19937_64 gen(7);
  for (int rows : {2, 6, 40, 400}) {
    for (int cols : {2, 8, 40}) {
      const Matrix a = spopt::testing::random_matrix(rows, cols, gen);
      const Matrix b = spopt::testing::random_matrix(rows, cols, gen);
      const Matrix c = spopt::testing::random_matrix(cols, 3, gen);
      const double scale = a.norm() * b.norm();

      EXPECT_EQ(parallel::jmul(a), serial::jmul(a));
      EXPECT_NEAR(parallel::frob_inner(a, b), serial::frob_inner(a, b), 1e-13 * scale);
      EXPECT_LE((parallel::crossprod(a, b) - serial::crossprod(a, b)).norm(), 1e-13 * scale);
      EXPECT_LE((parallel::matmul(a, c) - serial::matmul(a, c)).norm(),
                1e-13 * a.norm() * c.norm());
    }
  }
}

TEST(Kernels, SerialMatchesDenseProducts) {
  std::mt19937_64 gen(11);
  const Matrix a = spopt::testing::random_matrix(10, 4, gen);
  const Matrix b = spopt::testing::random_matrix(10, 6, gen);
  EXPECT_LE((serial::crossprod(a, b) - a.transpose() * b).norm(), 1e-12);
  EXPECT_LE((serial::matmul(a.transpose(), b) - a.transpose() * b).norm(), 1e-12);
  EXPECT_LE((serial::jmul(a) - spopt::testing::dense_j(10) * a).norm(), 0.0);
  EXPECT_NEAR(serial::frob_inner(a, a), a.squaredNorm(), 1e-12);
}

TEST(Kernels, ParallelIsBitwiseIndependentOfThreadCount) {
  std::mt19937_64 gen(3);
  const Matrix a = spopt::testing::random_matrix(600, 40, gen);
  const Matrix b = spopt::testing::random_matrix(600, 40, gen);
  const Matrix sq = spopt::testing::random_matrix(600, 600, gen);

  omp_set_num_threads(1);
  const double f1 = parallel::frob_inner(a, b);
  const Matrix c1 = parallel::crossprod(a, b);
  const Matrix m1 = parallel::matmul(sq, a);
  omp_set_num_threads(4);
  const double f4 = parallel::frob_inner(a, b);
  const Matrix c4 = parallel::crossprod(a, b);
  const Matrix m4 = parallel::matmul(sq, a);

  EXPECT_EQ(f1, f4);
  EXPECT_EQ(c1, c4);
  EXPECT_EQ(m1, m4);
}

TEST(Kernels, ShapeErrors) {
  EXPECT_THROW(parallel::jmul(Matrix::Zero(3, 2)), spopt::DimensionError);
  EXPECT_THROW(serial::jmul(Matrix::Zero(3, 2)), spopt::DimensionError);
  EXPECT_THROW(parallel::frob_inner(Matrix::Zero(2, 2), Matrix::Zero(2, 3)),
               spopt::DimensionError);
  EXPECT_THROW(parallel::crossprod(Matrix::Zero(2, 2), Matrix::Zero(3, 2)),
               spopt::DimensionError);
  EXPECT_THROW(parallel::matmul(Matrix::Zero(2, 2), Matrix::Zero(3, 2)), spopt::DimensionError);
}

}  // namespace
