#include "spopt/manifold.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "spopt/errors.hpp"
#include "spopt/kernels.hpp"
#include "spopt/rng.hpp"

namespace spopt {

namespace kp = kernels::parallel;

namespace {

constexpr double kMaxCondition = 1e14;
constexpr double kSkewTolerance = 1e-10;

void require_shape(const SpPoint& x, const Matrix& y, const char* what) {
  if (y.rows() != x.x().rows() || y.cols() != x.x().cols())
    throw DimensionError(std::string(what) + ": shape does not match the base point");
}

}  // namespace

// --- SpPoint / TangentVector ------------------------------------------------

SpPoint::SpPoint(Matrix x, double tol) {
  if (x.rows() == 0 || x.cols() == 0 || x.rows() % 2 != 0 || x.cols() % 2 != 0)
    throw DimensionError("SpPoint: dimensions must be positive and even");
  if (x.cols() > x.rows()) throw DimensionError("SpPoint: need p <= n");
  require_finite(x, "SpPoint");
  residual_ = symplecticity_residual(x);
  if (!(residual_ <= tol))
    throw ContractViolation("SpPoint: symplecticity residual " + std::to_string(residual_) +
                            " exceeds tolerance");
  n_ = static_cast<int>(x.rows() / 2);
  p_ = static_cast<int>(x.cols() / 2);
  x_ = std::make_shared<const Matrix>(std::move(x));
}

TangentVector::TangentVector(SpPoint base, Matrix z) : base_(std::move(base)), z_(std::move(z)) {
  require_shape(base_, z_, "TangentVector");
  require_finite(z_, "TangentVector");
}

double TangentVector::tangency_residual() const {
  // Z^T J X + X^T J Z, and (Z^T J X)^T = -X^T J Z.
  const Matrix c = kp::crossprod(z_, jmul(base_.x()));
  return (c - c.transpose()).norm();
}

Matrix SFactorForm::implied_s() const {
  const Matrix pq = pfac * qfac.transpose();
  return pq + pq.transpose();
}

// --- Lyapunov solve and projections ----------------------------------------

SkewFactor solve_sym_lyapunov(const Matrix& m, const Matrix& b) {
  if (m.rows() != m.cols() || b.rows() != b.cols() || m.rows() != b.rows())
    throw DimensionError("solve_sym_lyapunov: need square matrices of equal size");
  if ((b + b.transpose()).norm() > kSkewTolerance * std::max(1.0, b.norm()))
    throw ContractViolation("solve_sym_lyapunov: right-hand side is not skew-symmetric");

  const SymEigFactorization eig = eig_sym(m);
  const Eigen::Index dim = m.rows();
  if (dim == 0) return {Matrix(0, 0), 1.0};
  const double lmin = eig.lambda(0);
  const double lmax = eig.lambda(dim - 1);
  if (!(lmin > 0.0))
    throw NotPositiveDefiniteError("solve_sym_lyapunov: coefficient is not positive definite",
                                   lmin);

  Matrix u = eig.q.transpose() * b * eig.q;
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) u(i, j) /= eig.lambda(i) + eig.lambda(j);
  const Matrix omega = eig.q * u * eig.q.transpose();
  return {skew_part(omega), lmax / lmin};
}

OrthogonalSplit split_e(const SpPoint& x, const Matrix& y) {
  require_shape(x, y, "split_e");
  const Matrix& xm = x.x();
  const Matrix xtx = sym_part(kp::crossprod(xm, xm));
  const Matrix rhs = 2.0 * skew_part(kp::crossprod(xm, jtmul(y)));
  SkewFactor omega = solve_sym_lyapunov(xtx, rhs);
  Matrix normal = jmul(kp::matmul(xm, omega.omega));
  Matrix tangent = y - normal;
  return {std::move(tangent), {std::move(normal), std::move(omega)}};
}

NormalPart project_normal_e(const SpPoint& x, const Matrix& y) {
  return std::move(split_e(x, y).normal);
}

TangentVector project_tangent_e(const SpPoint& x, const Matrix& y) {
  return TangentVector(x, std::move(split_e(x, y).tangent));
}

// --- Metrics and parameterizations -----------------------------------------

double metric_e(const TangentVector& z1, const TangentVector& z2) {
  if (!z1.base().same_as(z2.base()))
    throw ContractViolation("metric_e: tangent vectors live at different points");
  return frob_inner(z1.z(), z2.z());
}

Matrix orthogonal_complement(const SpPoint& x) {
  const Matrix& xm = x.x();
  const Eigen::Index rows = xm.rows();
  const Eigen::Index want = rows - xm.cols();

  Eigen::HouseholderQR<Matrix> qr(xm);
  const Matrix range = qr.householderQ() * Matrix::Identity(rows, xm.cols());

  Matrix basis(rows, want);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < rows && found < want; ++i) {
    Vector v = Vector::Unit(rows, i);
    for (int pass = 0; pass < 2; ++pass) {
      v -= range * (range.transpose() * v);
      v -= basis.leftCols(found) * (basis.leftCols(found).transpose() * v);
    }
    const double norm = v.norm();
    if (norm > 1e-6) basis.col(found++) = v / norm;
  }
  if (found < want)
    throw NumericalError("orthogonal_complement: could not complete the basis",
                         static_cast<double>(want - found));
  return basis;
}

WKForm decompose_tangent(const SpPoint& x, const Matrix& basis_perp, const TangentVector& z) {
  const Matrix& xm = x.x();
  require_shape(x, z.z(), "decompose_tangent");
  if (basis_perp.rows() != xm.rows() || basis_perp.cols() != xm.rows() - xm.cols())
    throw DimensionError("decompose_tangent: basis_perp must be 2n x (2n - 2p)");
  if (basis_perp.cols() > 0 &&
      kp::crossprod(basis_perp, xm).norm() > 1e-10 * std::max(1.0, xm.norm()))
    throw ContractViolation("decompose_tangent: basis_perp is not orthogonal to X");

  WKForm out;
  out.w = sym_part(kp::crossprod(xm, jtmul(z.z())));
  out.basis_perp = basis_perp;
  if (basis_perp.cols() == 0) {
    out.k = Matrix(0, xm.cols());
    return out;
  }
  const Matrix gram = kp::crossprod(basis_perp, jmul(basis_perp));
  Eigen::PartialPivLU<Matrix> lu(gram);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxCondition >= 1.0))
    throw DegenerateComplementError("decompose_tangent: X_perp^T J X_perp is singular",
                                    rcond);
  out.k = lu.solve(kp::crossprod(basis_perp, z.z()));
  return out;
}

double metric_canonical(const CanonicalMetricParams& params, const TangentVector& z1,
                        const TangentVector& z2) {
  if (!(params.rho > 0.0)) throw ParameterError("metric_canonical: rho must be positive");
  if (!z1.base().same_as(z2.base()))
    throw ContractViolation("metric_canonical: tangent vectors live at different points");
  const WKForm a = decompose_tangent(z1.base(), params.basis_perp, z1);
  const WKForm b = decompose_tangent(z2.base(), params.basis_perp, z2);
  return frob_inner(a.w, b.w) / params.rho + frob_inner(a.k, b.k);
}

// --- Gradient and retraction -------------------------------------------------

TangentVector riem_grad_e(const SpPoint& x, const Matrix& egrad) {
  return project_tangent_e(x, egrad);
}

SFactorForm grad_s_factor(const SpPoint& x, const TangentVector& z) {
  const Matrix& xm = x.x();
  require_shape(x, z.z(), "grad_s_factor");
  SFactorForm s;
  s.qfac = mul_j(xm);
  // G_X Z = Z - (1/2) (X J) (X^T J^T Z)
  s.pfac = z.z() - 0.5 * kp::matmul(s.qfac, kp::crossprod(xm, jtmul(z.z())));
  return s;
}

namespace {

Matrix cayley_dense(const Matrix& xm, const SFactorForm& s, double half_t) {
  const Eigen::Index rows = xm.rows();
  const Matrix sj = mul_j(s.implied_s());
  const Matrix lhs = Matrix::Identity(rows, rows) - half_t * sj;
  // S J X = P (Q^T J X) + Q (P^T J X)
  const Matrix jx = jmul(xm);
  const Matrix sjx = kp::matmul(s.pfac, kp::crossprod(s.qfac, jx)) +
                     kp::matmul(s.qfac, kp::crossprod(s.pfac, jx));
  const Matrix rhs = xm + half_t * sjx;

  Eigen::PartialPivLU<Matrix> lu(lhs);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxCondition >= 1.0))
    throw StepTooLargeError("cayley_retract: I - (t/2) S J is singular", rcond);
  return lu.solve(rhs);
}

Matrix cayley_low_rank(const Matrix& xm, const SFactorForm& s, double half_t) {
  const Eigen::Index cols = xm.cols();
  // S J = U V^T with U = [P Q], V = J^T [Q P].
  Matrix u(xm.rows(), 2 * cols);
  u << s.pfac, s.qfac;
  Matrix v(xm.rows(), 2 * cols);
  v << s.qfac, s.pfac;
  v = jtmul(v);

  const Matrix b = xm + half_t * kp::matmul(u, kp::crossprod(v, xm));
  const Matrix core = Matrix::Identity(2 * cols, 2 * cols) - half_t * kp::crossprod(v, u);
  Eigen::PartialPivLU<Matrix> lu(core);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxCondition >= 1.0))
    throw StepTooLargeError("cayley_retract: I - (t/2) S J is singular", rcond);
  return b + half_t * kp::matmul(u, lu.solve(kp::crossprod(v, b)));
}

}  // namespace

SpPoint cayley_retract(const SpPoint& x, const SFactorForm& s, double t, CayleyMode mode) {
  if (t == 0.0) return x;
  const Matrix& xm = x.x();
  if (s.pfac.rows() != xm.rows() || s.pfac.cols() != xm.cols() ||
      s.qfac.rows() != xm.rows() || s.qfac.cols() != xm.cols())
    throw DimensionError("cayley_retract: factor shapes do not match the base point");
  if (!std::isfinite(t)) throw ParameterError("cayley_retract: step must be finite");

  Matrix y = mode == CayleyMode::dense ? cayley_dense(xm, s, 0.5 * t)
                                       : cayley_low_rank(xm, s, 0.5 * t);
  if (!y.allFinite())
    throw StepTooLargeError("cayley_retract: non-finite result", INFINITY);
  const double residual = symplecticity_residual(y);
  if (!(residual <= kFeasTol))
    throw StepTooLargeError("cayley_retract: result lost feasibility", residual);
  return SpPoint(std::move(y));
}

SpPoint random_point(int n, int p, std::uint64_t seed) {
  const SpPoint base(canonical_base_point(n, p));
  const TangentVector z = random_tangent(base, seed);
  return cayley_retract(base, grad_s_factor(base, z), 1.0);
}

TangentVector random_tangent(const SpPoint& x, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix g = rng.gaussian_matrix(x.x().rows(), x.x().cols());
  Matrix z = split_e(x, g).tangent;
  z /= z.norm();
  return TangentVector(x, std::move(z));
}

}  // namespace spopt
