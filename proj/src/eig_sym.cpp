#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "spopt/core.hpp"
#include "spopt/errors.hpp"

namespace spopt {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffTolerance = 1e-14;
constexpr double kSymmetryTolerance = 1e-12;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Zeroes a(p,q) with a plane rotation applied on both sides; accumulates the
// rotation into v.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(1.0 + theta * theta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  // Exact zero keeps the off-norm monotone.
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

SymEigFactorization eig_sym(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eig_sym: matrix must be square");
  require_finite(m, "eig_sym");
  const double scale = m.norm();
  if ((m - m.transpose()).norm() > kSymmetryTolerance * scale)
    throw ContractViolation("eig_sym: input is not symmetric");

  Matrix a = sym_part(m);
  const Eigen::Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  const double tol = kOffTolerance * scale;

  bool converged = false;
  double off = off_diagonal_norm(a);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off <= tol) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    off = off_diagonal_norm(a);
  }
  if (!converged && off > tol)
    throw NumericalError("eig_sym: Jacobi sweeps did not converge", off);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymEigFactorization out{Matrix(n, n), Vector(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.lambda(k) = a(src, src);
    out.q.col(k) = v.col(src);
  }
  return out;
}

}  // namespace spopt
