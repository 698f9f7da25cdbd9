#include "spopt/core.hpp"

#include <cmath>
#include <string>

#include "spopt/errors.hpp"
#include "spopt/kernels.hpp"

namespace spopt {

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite())
    throw ParameterError(std::string(what) + ": non-finite entry");
}

Matrix jmul(const Matrix& a) { return kernels::parallel::jmul(a); }

Matrix jtmul(const Matrix& a) {
  Matrix out = kernels::parallel::jmul(a);
  out = -out;
  return out;
}

Matrix mul_j(const Matrix& a) {
  if (a.cols() % 2 != 0) throw DimensionError("mul_j: column count must be even");
  const Eigen::Index m = a.cols() / 2;
  Matrix out(a.rows(), a.cols());
  out.leftCols(m) = -a.rightCols(m);
  out.rightCols(m) = a.leftCols(m);
  return out;
}

Matrix skew_part(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("skew_part: matrix must be square");
  return 0.5 * (a - a.transpose());
}

Matrix sym_part(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("sym_part: matrix must be square");
  return 0.5 * (a + a.transpose());
}

double frob_inner(const Matrix& a, const Matrix& b) {
  return kernels::parallel::frob_inner(a, b);
}

double symplecticity_residual(const Matrix& x) {
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0)
    throw DimensionError("symplecticity_residual: dimensions must be even");
  if (x.cols() > x.rows())
    throw DimensionError("symplecticity_residual: need p <= n");
  Matrix gram = kernels::parallel::crossprod(x, jmul(x));
  const Eigen::Index p = x.cols() / 2;
  gram.topRightCorner(p, p).diagonal().array() -= 1.0;
  gram.bottomLeftCorner(p, p).diagonal().array() += 1.0;
  return gram.norm();
}

Matrix canonical_base_point(int n, int p) {
  if (p < 1 || n < 1) throw DimensionError("canonical_base_point: n, p must be positive");
  if (p > n) throw DimensionError("canonical_base_point: need p <= n");
  Matrix e = Matrix::Zero(2 * n, 2 * p);
  for (int i = 0; i < p; ++i) {
    e(i, i) = 1.0;
    e(n + i, p + i) = 1.0;
  }
  return e;
}

Matrix poisson_matrix(int m) {
  Matrix j = Matrix::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m).setIdentity();
  j.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return j;
}

}  // namespace spopt
