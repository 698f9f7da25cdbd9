#include "spopt/kernels.hpp"

#include "spopt/errors.hpp"

namespace spopt::kernels::serial {

Matrix jmul(const Matrix& a) {
  if (a.rows() % 2 != 0) throw DimensionError("jmul: row count must be even");
  const Eigen::Index m = a.rows() / 2;
  Matrix out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      out(i, j) = a(m + i, j);
      out(m + i, j) = -a(i, j);
    }
  }
  return out;
}

double frob_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("frob_inner: shape mismatch");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) sum += a(i, j) * b(i, j);
  return sum;
}

Matrix crossprod(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("crossprod: row mismatch");
  Matrix out(a.cols(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < a.rows(); ++k) s += a(k, i) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimension mismatch");
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * bkj;
    }
  }
  return out;
}

}  // namespace spopt::kernels::serial
