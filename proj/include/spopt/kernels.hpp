#pragma once

// Dense kernels on the hot path of every projection and objective evaluation.
//
// Each kernel exists twice with identical signatures: `serial` is the plain
// loop reference used by the test suite and the benchmark baseline, and
// `parallel` is the OpenMP version the library calls. Parallel kernels are
// bitwise independent of the thread count: every output entry (and every
// partial sum of a reduction) is accumulated by one thread in a fixed order.

#include <Eigen/Core>

namespace spopt::kernels {

using Matrix = Eigen::MatrixXd;

namespace serial {

/// J_{2m} * A for A with 2m rows (block swap and negate).
Matrix jmul(const Matrix& a);
/// tr(A^T B).
double frob_inner(const Matrix& a, const Matrix& b);
/// A^T * B.
Matrix crossprod(const Matrix& a, const Matrix& b);
/// A * B.
Matrix matmul(const Matrix& a, const Matrix& b);

}  // namespace serial

namespace parallel {

Matrix jmul(const Matrix& a);
double frob_inner(const Matrix& a, const Matrix& b);
Matrix crossprod(const Matrix& a, const Matrix& b);
Matrix matmul(const Matrix& a, const Matrix& b);

/// Threads OpenMP will use for the next parallel region (1 without OpenMP).
int max_threads();

}  // namespace parallel

}  // namespace spopt::kernels
