#include "spopt/problems.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "spopt/errors.hpp"
#include "spopt/kernels.hpp"

namespace spopt {

namespace kp = kernels::parallel;

namespace {

// Above this size positive definiteness is checked with a Cholesky
// factorization instead of a full Jacobi eigendecomposition.
constexpr Eigen::Index kJacobiCheckLimit = 128;

}  // namespace

SymEigProblem::SymEigProblem(Matrix a, int p) : p_(p) {
  if (a.rows() != a.cols() || a.rows() == 0 || a.rows() % 2 != 0)
    throw DimensionError("SymEigProblem: A must be square with even size");
  if (p < 1 || 2 * p > a.rows()) throw DimensionError("SymEigProblem: need 1 <= p <= n");
  require_finite(a, "SymEigProblem");
  const double scale = a.norm();
  if ((a - a.transpose()).norm() > 1e-12 * scale)
    throw ContractViolation("SymEigProblem: A is not symmetric");
  a_ = sym_part(a);

  if (a_.rows() <= kJacobiCheckLimit) {
    const SymEigFactorization eig = eig_sym(a_);
    if (!(eig.lambda(0) > 0.0))
      throw NotPositiveDefiniteError("SymEigProblem: A is not positive definite", eig.lambda(0));
  } else {
    Eigen::LLT<Matrix> llt(a_);
    if (llt.info() != Eigen::Success)
      throw NotPositiveDefiniteError("SymEigProblem: A is not positive definite", 0.0);
  }
}

Objective nearest_objective(const NearestProblem& prob) {
  require_finite(prob.a, "NearestProblem");
  auto a = std::make_shared<const Matrix>(prob.a);
  auto check = [a](const Matrix& x) {
    if (x.rows() != a->rows() || x.cols() != a->cols())
      throw DimensionError("nearest objective: X does not match the target shape");
  };
  return {[a, check](const Matrix& x) {
            check(x);
            const Matrix r = x - *a;
            return frob_inner(r, r);
          },
          [a, check](const Matrix& x) -> Matrix {
            check(x);
            return 2.0 * (x - *a);
          }};
}

Objective symeig_objective(const SymEigProblem& prob) {
  auto a = std::make_shared<const Matrix>(prob.a());
  auto check = [a](const Matrix& x) {
    if (x.rows() != a->rows()) throw DimensionError("symeig objective: X has the wrong row count");
  };
  return {[a, check](const Matrix& x) {
            check(x);
            return frob_inner(x, kp::matmul(*a, x));
          },
          [a, check](const Matrix& x) -> Matrix {
            check(x);
            return 2.0 * kp::matmul(*a, x);
          }};
}

Vector williamson_spectrum(const Matrix& b) {
  if (b.rows() != b.cols() || b.rows() % 2 != 0)
    throw DimensionError("williamson_spectrum: need a square matrix of even size");
  const Eigen::Index m = b.rows() / 2;
  const SymEigFactorization eb = eig_sym(sym_part(b));
  if (!(eb.lambda(0) > 0.0))
    throw NotPositiveDefiniteError("williamson_spectrum: matrix is not positive definite",
                                   eb.lambda(0));
  const Matrix root = eb.q * eb.lambda.cwiseSqrt().asDiagonal() * eb.q.transpose();
  const Matrix t = root * jmul(root);
  const SymEigFactorization et = eig_sym(sym_part(t.transpose() * t));
  Vector d(m);
  for (Eigen::Index i = 0; i < m; ++i)
    d(i) = std::sqrt(std::max(0.0, 0.5 * (et.lambda(2 * i) + et.lambda(2 * i + 1))));
  return d;
}

SymplecticSpectrum extract_symplectic_eigenvalues(const SpPoint& x, const Matrix& a) {
  const Matrix& xm = x.x();
  if (a.rows() != a.cols() || a.rows() != xm.rows())
    throw DimensionError("extract_symplectic_eigenvalues: A must be 2n x 2n");
  const Matrix b = sym_part(kp::crossprod(xm, kp::matmul(a, xm)));
  const Eigen::Index p = x.p();

  SymplecticSpectrum out;
  out.values = williamson_spectrum(b);
  out.diagonal_average.resize(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    out.diagonal_average(i) = 0.5 * (b(i, i) + b(p + i, p + i));
    const double scale = std::max(out.diagonal_average(i), 1e-300);
    out.half_mismatch = std::max(out.half_mismatch, std::abs(b(i, i) - b(p + i, p + i)) / scale);
  }
  const double lower = 2.0 * out.values.sum();
  out.not_converged = b.trace() - lower > 1e-3 * lower;
  return out;
}

NearestInstance gen_near_symplectic(int n, int p, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw ParameterError("gen_near_symplectic: sigma must be finite and non-negative");
  const SpPoint base(canonical_base_point(n, p));
  Rng rng(seed);
  Matrix z = split_e(base, rng.gaussian_matrix(2 * n, 2 * p)).tangent;
  z /= z.norm();
  const TangentVector tangent(base, std::move(z));
  SpPoint truth = cayley_retract(base, grad_s_factor(base, tangent), 1.0);
  Matrix a = truth.x() + sigma * rng.gaussian_matrix(2 * n, 2 * p);
  return {NearestProblem{std::move(a)}, std::move(truth)};
}

Matrix random_symplectic_matrix(int n, Rng& rng, double scale) {
  if (n < 1) throw DimensionError("random_symplectic_matrix: n must be positive");
  const Eigen::Index dim = 2 * n;
  const Matrix s = sym_part(rng.gaussian_matrix(dim, dim));
  const SymEigFactorization eig = eig_sym(s);
  const double norm = std::max(std::abs(eig.lambda(0)), std::abs(eig.lambda(dim - 1)));
  // J is orthogonal, so ||S J||_2 = ||S||_2.
  const Matrix h = mul_j(s) * (norm > 0.0 ? scale / norm : 0.0);
  const Matrix id = Matrix::Identity(dim, dim);
  return Eigen::PartialPivLU<Matrix>(id - h).solve(id + h);
}

SymEigProblem gen_spd_with_symplectic_spectrum(int n, std::span<const double> d, int p,
                                               std::uint64_t seed) {
  if (n < 1) throw DimensionError("gen_spd_with_symplectic_spectrum: n must be positive");
  if (d.size() != static_cast<std::size_t>(n))
    throw DimensionError("gen_spd_with_symplectic_spectrum: need exactly n values");
  for (double v : d)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ParameterError("gen_spd_with_symplectic_spectrum: symplectic eigenvalues must be positive");

  Rng rng(seed);
  const Matrix m = random_symplectic_matrix(n, rng);
  Vector diag(2 * n);
  for (int i = 0; i < n; ++i) diag(i) = diag(n + i) = d[static_cast<std::size_t>(i)];
  const Matrix a = m.transpose() * diag.asDiagonal() * m;
  return SymEigProblem(sym_part(a), p);
}

}  // namespace spopt
