#pragma once

// Dense symplectic linear-algebra primitives. J_{2m} = [[0, I_m], [-I_m, 0]]
// is never formed; products with it are block swaps with a sign flip.

#include <Eigen/Core>

namespace spopt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Throws ParameterError if any entry of `a` is NaN or infinite. `what`
/// names the argument in the message.
void require_finite(const Matrix& a, const char* what);

/// J_{2m} * A. Throws DimensionError for an odd row count.
Matrix jmul(const Matrix& a);

/// J_{2m}^T * A = -J_{2m} * A.
Matrix jtmul(const Matrix& a);

/// A * J_{2m}; A must have an even column count.
Matrix mul_j(const Matrix& a);

/// (A - A^T) / 2 for square A.
Matrix skew_part(const Matrix& a);

/// (A + A^T) / 2 for square A.
Matrix sym_part(const Matrix& a);

/// tr(A^T B).
double frob_inner(const Matrix& a, const Matrix& b);

/// ||X^T J_{2n} X - J_{2p}||_F for a 2n x 2p matrix with p <= n.
double symplecticity_residual(const Matrix& x);

/// Columns e_1..e_p, e_{n+1}..e_{n+p} of I_{2n}: the standard point of
/// Sp(2p, 2n).
Matrix canonical_base_point(int n, int p);

/// Dense J_{2m}; for tests and oracles only.
Matrix poisson_matrix(int m);

/// M = q * diag(lambda) * q^T with q orthogonal and lambda ascending.
struct SymEigFactorization {
  Matrix q;
  Vector lambda;
};

/// Cyclic Jacobi eigensolver for a small symmetric matrix.
///
/// The input is symmetrized first; an asymmetry larger than 1e-12 ||M||_F is
/// rejected with ContractViolation. Sweeps stop once the off-diagonal
/// Frobenius norm drops to 1e-14 ||M||_F; if that has not happened after 100
/// sweeps a NumericalError carrying the remaining off-diagonal norm is thrown.
SymEigFactorization eig_sym(const Matrix& m);

}  // namespace spopt
