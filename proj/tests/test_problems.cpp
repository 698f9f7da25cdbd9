#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "spopt/errors.hpp"
#include "spopt/problems.hpp"

namespace {

using spopt::Matrix;
using spopt::SpPoint;
using spopt::Vector;
using spopt::testing::dense_j;
using spopt::testing::random_matrix;

std::vector<double> one_to(int n) {
  std::vector<double> d(static_cast<std::size_t>(n));
  std::iota(d.begin(), d.end(), 1.0);
  return d;
}

spopt::SolverConfig tight() {
  spopt::SolverConfig cfg;
  cfg.tol_gradnorm = 1e-8;
  cfg.max_iter = 5000;
  return cfg;
}

// --- Objectives --------------------------------------------------------------

TEST(NearestObjective, Examples) {
  std::mt19937_64 gen(1);
  const Matrix a = random_matrix(6, 4, gen);
  const auto obj = spopt::nearest_objective({a});
  EXPECT_EQ(obj.eval_f(a), 0.0);
  EXPECT_EQ(obj.eval_egrad(a).norm(), 0.0);
  const auto zero = spopt::nearest_objective({Matrix::Zero(6, 4)});
  const Matrix x = random_matrix(6, 4, gen);
  EXPECT_NEAR(zero.eval_f(x), x.squaredNorm(), 1e-12);
  EXPECT_THROW(obj.eval_f(Matrix::Zero(4, 4)), spopt::DimensionError);
}

TEST(NearestObjective, GradientCheck) {
  std::mt19937_64 gen(2);
  const auto obj = spopt::nearest_objective({random_matrix(8, 4, gen)});
  for (int k = 0; k < 5; ++k)
    EXPECT_LE(spopt::check_gradient(obj, spopt::random_point(4, 2, 10 + k), 20, 1e-5, k)
                  .max_relative_error,
              1e-6);
}

TEST(SymEigObjective, IdentityAtBasePoint) {
  for (int p = 1; p <= 3; ++p) {
    const spopt::SymEigProblem prob(Matrix::Identity(8, 8), p);
    const auto obj = spopt::symeig_objective(prob);
    const Matrix e = spopt::canonical_base_point(4, p);
    EXPECT_EQ(obj.eval_f(e), 2.0 * p);
    EXPECT_EQ(obj.eval_egrad(e), 2.0 * e);
  }
}

TEST(SymEigObjective, GradientCheck) {
  const auto prob = spopt::gen_spd_with_symplectic_spectrum(5, one_to(5), 2, 3);
  const auto obj = spopt::symeig_objective(prob);
  for (int k = 0; k < 5; ++k)
    EXPECT_LE(spopt::check_gradient(obj, spopt::random_point(5, 2, 20 + k), 20, 1e-5, k)
                  .max_relative_error,
              1e-6);
}

TEST(SymEigProblem, Validation) {
  EXPECT_THROW(spopt::SymEigProblem(Matrix::Identity(3, 3), 1), spopt::DimensionError);
  EXPECT_THROW(spopt::SymEigProblem(Matrix::Identity(4, 4), 3), spopt::DimensionError);
  EXPECT_THROW(spopt::SymEigProblem(-Matrix::Identity(4, 4), 1), spopt::NotPositiveDefiniteError);
  Matrix asym = Matrix::Identity(4, 4);
  asym(0, 1) = 0.5;
  EXPECT_THROW(spopt::SymEigProblem(asym, 1), spopt::ContractViolation);
  // Large matrices go through the Cholesky check.
  Matrix big = Matrix::Identity(200, 200);
  big(7, 7) = -1.0;
  EXPECT_THROW(spopt::SymEigProblem(big, 2), spopt::NotPositiveDefiniteError);
}

// --- Symplectic eigenvalues --------------------------------------------------

TEST(Williamson, DiagonalForm) {
  Vector diag(6);
  diag << 3, 1, 2, 3, 1, 2;
  const Vector d = spopt::williamson_spectrum(Matrix(diag.asDiagonal()));
  EXPECT_NEAR(d(0), 1.0, 1e-14);
  EXPECT_NEAR(d(1), 2.0, 1e-14);
  EXPECT_NEAR(d(2), 3.0, 1e-14);
}

TEST(Williamson, InvariantUnderSymplecticCongruence) {
  spopt::Rng rng(4);
  const Matrix m = spopt::random_symplectic_matrix(3, rng);
  Vector diag(6);
  diag << 0.5, 2, 7, 0.5, 2, 7;
  const Vector d = spopt::williamson_spectrum(m.transpose() * diag.asDiagonal() * m);
  EXPECT_NEAR(d(0), 0.5, 1e-12);
  EXPECT_NEAR(d(1), 2.0, 1e-12);
  EXPECT_NEAR(d(2), 7.0, 1e-12);
}

TEST(Extract, IdentityAtBasePoint) {
  const auto spec = spopt::extract_symplectic_eigenvalues(
      SpPoint(spopt::canonical_base_point(4, 3)), Matrix::Identity(8, 8));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(spec.values(i), 1.0, 1e-14);
  EXPECT_FALSE(spec.not_converged);
}

TEST(Extract, DiagonalCaseSelectsPairs) {
  const int n = 5;
  const std::vector<double> d{4.0, 0.5, 3.0, 9.0, 2.0};
  Vector diag(2 * n);
  for (int i = 0; i < n; ++i) diag(i) = diag(n + i) = d[i];
  // Pairs 2 and 4 (values 3 and 2): columns e_3, e_5, e_8, e_10.
  Matrix x = Matrix::Zero(2 * n, 4);
  x(2, 0) = x(4, 1) = x(n + 2, 2) = x(n + 4, 3) = 1.0;
  const auto spec = spopt::extract_symplectic_eigenvalues(SpPoint(x), Matrix(diag.asDiagonal()));
  EXPECT_NEAR(spec.values(0), 2.0, 1e-14);
  EXPECT_NEAR(spec.values(1), 3.0, 1e-14);
  EXPECT_EQ(spec.half_mismatch, 0.0);
  // A critical point (though not the minimizer), so no warning.
  EXPECT_FALSE(spec.not_converged);
}

TEST(Extract, FlagsPointsAwayFromCriticality) {
  const auto prob = spopt::gen_spd_with_symplectic_spectrum(6, one_to(6), 2, 13);
  EXPECT_TRUE(spopt::extract_symplectic_eigenvalues(spopt::random_point(6, 2, 3), prob.a())
                  .not_converged);
}

TEST(Extract, PlantedSpectrumAfterMinimize) {
  std::vector<double> d = one_to(5);
  for (int i = 5; i < 40; ++i) d.push_back(6.0 + 0.1 * i);
  const auto prob = spopt::gen_spd_with_symplectic_spectrum(40, d, 5, 5);
  const auto report = spopt::minimize(spopt::symeig_objective(prob),
                                      SpPoint(spopt::canonical_base_point(40, 5)), tight());
  ASSERT_EQ(report.status, spopt::SolverStatus::converged);
  const auto spec = spopt::extract_symplectic_eigenvalues(report.final_point, prob.a());
  double err = 0.0;
  for (int i = 0; i < 5; ++i) err += std::abs(spec.values(i) - (i + 1.0));
  EXPECT_LE(err, 1e-6);
  EXPECT_FALSE(spec.not_converged);
  // Both diagonal halves agree at the minimizer even though their average
  // need not be the spectrum.
  EXPECT_LE(spec.half_mismatch, 1e-3);
}

// --- Generators --------------------------------------------------------------

TEST(GenNearSymplectic, ExactlyFeasibleWithoutNoise) {
  const auto inst = spopt::gen_near_symplectic(6, 2, 0.0, 7);
  EXPECT_EQ(inst.problem.a, inst.ground_truth.x());
  EXPECT_EQ(inst.ground_truth.x(), spopt::random_point(6, 2, 7).x());
  const auto report = spopt::minimize(spopt::nearest_objective(inst.problem),
                                      SpPoint(spopt::random_point(6, 2, 99)));
  EXPECT_LE(report.trace.back().f, 1e-12);
}

TEST(GenNearSymplectic, NoiseLevelConcentrates) {
  const double sigma = 0.1;
  const auto inst = spopt::gen_near_symplectic(20, 5, sigma, 8);
  const double f_truth =
      spopt::nearest_objective(inst.problem).eval_f(inst.ground_truth.x());
  EXPECT_LE(f_truth, sigma * sigma * (40 * 10) * 1.5);
  EXPECT_GE(f_truth, sigma * sigma * (40 * 10) * 0.5);
}

TEST(GenNearSymplectic, Deterministic) {
  const auto a = spopt::gen_near_symplectic(5, 2, 0.3, 9);
  const auto b = spopt::gen_near_symplectic(5, 2, 0.3, 9);
  EXPECT_EQ(a.problem.a, b.problem.a);
  EXPECT_EQ(a.ground_truth.x(), b.ground_truth.x());
  EXPECT_THROW(spopt::gen_near_symplectic(5, 2, -1.0, 9), spopt::ParameterError);
}

TEST(RandomSymplecticMatrix, SymplecticAndIdentityAtZeroScale) {
  spopt::Rng rng(10);
  const Matrix m = spopt::random_symplectic_matrix(4, rng);
  EXPECT_LE((m.transpose() * dense_j(8) * m - dense_j(8)).norm(), 1e-12);
  spopt::Rng rng0(10);
  EXPECT_EQ(spopt::random_symplectic_matrix(4, rng0, 0.0), Matrix::Identity(8, 8));
}

TEST(GenSpd, UnitSpectrumGivesUnitSymplecticEigenvalues) {
  const auto prob = spopt::gen_spd_with_symplectic_spectrum(4, std::vector<double>(4, 1.0), 2, 11);
  const Vector d = spopt::williamson_spectrum(prob.a());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(d(i), 1.0, 1e-12);
}

TEST(GenSpd, PlantedSpectrumIsExact) {
  const auto d = one_to(6);
  const auto prob = spopt::gen_spd_with_symplectic_spectrum(6, d, 2, 12);
  EXPECT_EQ(prob.a(), prob.a().transpose());
  const Vector got = spopt::williamson_spectrum(prob.a());
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(got(i), d[i], 1e-11);
}

TEST(GenSpd, Errors) {
  EXPECT_THROW(spopt::gen_spd_with_symplectic_spectrum(3, std::vector<double>{1, 0, 2}, 1, 1),
               spopt::ParameterError);
  EXPECT_THROW(spopt::gen_spd_with_symplectic_spectrum(3, std::vector<double>{1, 2}, 1, 1),
               spopt::DimensionError);
}

// --- Properties --------------------------------------------------------------

TEST(SymEigProperties, SpectrumIndependentOfSeed) {
  std::vector<double> d = one_to(5);
  for (int i = 5; i < 25; ++i) d.push_back(6.0 + 0.2 * i);
  std::vector<Vector> spectra;
  for (std::uint64_t seed : {21u, 22u}) {
    const auto prob = spopt::gen_spd_with_symplectic_spectrum(25, d, 5, seed);
    const auto report = spopt::minimize(spopt::symeig_objective(prob),
                                        SpPoint(spopt::canonical_base_point(25, 5)), tight());
    ASSERT_EQ(report.status, spopt::SolverStatus::converged);
    spectra.push_back(spopt::extract_symplectic_eigenvalues(report.final_point, prob.a()).values);
  }
  EXPECT_LE((spectra[0] - spectra[1]).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(SymEigProperties, TraceLowerBound) {
  const auto prob = spopt::gen_spd_with_symplectic_spectrum(8, one_to(8), 3, 23);
  const auto obj = spopt::symeig_objective(prob);
  const double bound = 2.0 * (1 + 2 + 3);
  for (int k = 0; k < 30; ++k)
    EXPECT_GE(obj.eval_f(spopt::random_point(8, 3, 100 + k).x()), bound - 1e-6);
  const auto report =
      spopt::minimize(obj, SpPoint(spopt::canonical_base_point(8, 3)), tight());
  EXPECT_GE(report.trace.back().f, bound - 1e-6);
  EXPECT_NEAR(report.trace.back().f, bound, 1e-6);
}

TEST(NearestProperties, ResidualIsNormalAtConvergence) {
  const auto inst = spopt::gen_near_symplectic(20, 5, 0.1, 24);
  const auto report = spopt::minimize(spopt::nearest_objective(inst.problem),
                                      SpPoint(spopt::canonical_base_point(20, 5)));
  ASSERT_EQ(report.status, spopt::SolverStatus::converged);
  const Matrix r = report.final_point.x() - inst.problem.a;
  EXPECT_LE(spopt::project_tangent_e(report.final_point, r).z().norm(), 1e-5 * r.norm());
}

}  // namespace
