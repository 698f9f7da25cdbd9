#include "spopt/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spopt/errors.hpp"

namespace spopt::kernels::parallel {

namespace {

// Below this many multiply-adds the fork/join costs more than it saves.
constexpr long kMinParallelWork = 1L << 15;

bool worth_it(long work) { return work >= kMinParallelWork; }

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Matrix jmul(const Matrix& a) {
  if (a.rows() % 2 != 0) throw DimensionError("jmul: row count must be even");
  const Eigen::Index m = a.rows() / 2;
  const Eigen::Index cols = a.cols();
  Matrix out(a.rows(), cols);
#pragma omp parallel for schedule(static) if (worth_it(static_cast<long>(a.size())))
  for (Eigen::Index j = 0; j < cols; ++j) {
    out.col(j).head(m) = a.col(j).tail(m);
    out.col(j).tail(m) = -a.col(j).head(m);
  }
  return out;
}

double frob_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("frob_inner: shape mismatch");
  const Eigen::Index cols = a.cols();
  const Eigen::Index rows = a.rows();
  // Per-column partials summed afterwards in column order, so the result does
  // not depend on how columns were distributed over threads.
  std::vector<double> partial(static_cast<std::size_t>(cols), 0.0);
#pragma omp parallel for schedule(static) if (worth_it(static_cast<long>(a.size())))
  for (Eigen::Index j = 0; j < cols; ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) s += a(i, j) * b(i, j);
    partial[static_cast<std::size_t>(j)] = s;
  }
  double sum = 0.0;
  for (double s : partial) sum += s;
  return sum;
}

Matrix crossprod(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("crossprod: row mismatch");
  const Eigen::Index rows = a.rows();
  const Eigen::Index ni = a.cols();
  const Eigen::Index nj = b.cols();
  Matrix out(ni, nj);
  const long work = static_cast<long>(rows) * ni * nj;
#pragma omp parallel for collapse(2) schedule(static) if (worth_it(work))
  for (Eigen::Index j = 0; j < nj; ++j) {
    for (Eigen::Index i = 0; i < ni; ++i) {
      const double* ai = a.col(i).data();
      const double* bj = b.col(j).data();
      double s = 0.0;
      for (Eigen::Index k = 0; k < rows; ++k) s += ai[k] * bj[k];
      out(i, j) = s;
    }
  }
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimension mismatch");
  const Eigen::Index rows = a.rows();
  const Eigen::Index inner = a.cols();
  const Eigen::Index nj = b.cols();
  Matrix out(rows, nj);
  const long work = static_cast<long>(rows) * inner * nj;
#pragma omp parallel for schedule(static) if (worth_it(work))
  for (Eigen::Index j = 0; j < nj; ++j) {
    double* cj = out.col(j).data();
    for (Eigen::Index i = 0; i < rows; ++i) cj[i] = 0.0;
    for (Eigen::Index k = 0; k < inner; ++k) {
      const double bkj = b(k, j);
      const double* ak = a.col(k).data();
      for (Eigen::Index i = 0; i < rows; ++i) cj[i] += ak[i] * bkj;
    }
  }
  return out;
}

}  // namespace spopt::kernels::parallel
