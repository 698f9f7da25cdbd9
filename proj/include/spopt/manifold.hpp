#pragma once

// Geometry of the symplectic Stiefel manifold
//
//   Sp(2p, 2n) = { X in R^{2n x 2p} : X^T J_{2n} X = J_{2p} },  p <= n,
//
// as a Riemannian submanifold of R^{2n x 2p} with the Frobenius inner
// product. Tangent space at X: { Z : Z^T J X + X^T J Z = 0 }. Normal space:
// { J X Omega : Omega skew }.

#include <cstdint>
#include <memory>

#include "spopt/core.hpp"

namespace spopt {

/// Feasibility tolerance on ||X^T J X - J||_F for constructed points.
inline constexpr double kFeasTol = 1e-8;

/// A point of Sp(2p, 2n). Immutable; copies share storage.
class SpPoint {
 public:
  /// Throws DimensionError for odd or inconsistent shapes, ParameterError for
  /// non-finite entries and ContractViolation if the symplecticity residual
  /// exceeds `tol`.
  explicit SpPoint(Matrix x, double tol = kFeasTol);

  const Matrix& x() const { return *x_; }
  int n() const { return n_; }
  int p() const { return p_; }
  /// Symplecticity residual measured at construction.
  double residual() const { return residual_; }

  bool same_as(const SpPoint& other) const { return x_ == other.x_ || x() == other.x(); }

 private:
  std::shared_ptr<const Matrix> x_;
  int n_;
  int p_;
  double residual_;
};

/// Ambient representation Z of a vector tangent at `base`.
class TangentVector {
 public:
  TangentVector(SpPoint base, Matrix z);

  const SpPoint& base() const { return base_; }
  const Matrix& z() const { return z_; }

  /// ||Z^T J X + X^T J Z||_F; zero for a true tangent vector.
  double tangency_residual() const;

 private:
  SpPoint base_;
  Matrix z_;
};

/// Z = X J W + J X_perp K with W symmetric.
struct WKForm {
  Matrix w;
  Matrix k;
  Matrix basis_perp;
};

/// Z = S J X with S = P Q^T + Q P^T, P = G_X Z, Q = X J and
/// G_X = I - X J X^T J^T / 2. S is kept factored.
struct SFactorForm {
  Matrix pfac;
  Matrix qfac;

  /// Dense 2n x 2n S; O(n^2 p).
  Matrix implied_s() const;
};

/// Skew-symmetric 2p x 2p matrix. `condition` is lambda_max / lambda_min of
/// the Lyapunov coefficient it was solved with (1 when not from a solve).
struct SkewFactor {
  Matrix omega;
  double condition = 1.0;
};

/// Parameters of the canonical-like metric (1/rho) tr(W1^T W2) + tr(K1^T K2).
struct CanonicalMetricParams {
  double rho = 1.0;
  Matrix basis_perp;
};

/// Lyapunov coefficients above this condition number are flagged as
/// ill-conditioned by `lyapunov_ill_conditioned`.
inline constexpr double kLyapunovConditionWarn = 1e12;

/// Solves M Omega + Omega M = B for SPD M and skew B.
///
/// M = Q diag(lambda) Q^T is diagonalized with eig_sym, the transformed
/// system Lambda U + U Lambda = Q^T B Q is solved entrywise as
/// u_ij = r_ij / (lambda_i + lambda_j), and Omega = Q U Q^T is returned
/// skew-symmetrized.
SkewFactor solve_sym_lyapunov(const Matrix& m, const Matrix& b);

inline bool lyapunov_ill_conditioned(const SkewFactor& s) {
  return s.condition > kLyapunovConditionWarn;
}

struct NormalPart {
  Matrix normal;  ///< J X Omega
  SkewFactor omega;
};

/// Normal component of Y at X: J X Omega with
/// X^T X Omega + Omega X^T X = 2 skew(X^T J^T Y).
NormalPart project_normal_e(const SpPoint& x, const Matrix& y);

/// Tangent component of Y at X: Y - J X Omega.
TangentVector project_tangent_e(const SpPoint& x, const Matrix& y);

/// Both components from a single Lyapunov solve.
struct OrthogonalSplit {
  Matrix tangent;
  NormalPart normal;
};
OrthogonalSplit split_e(const SpPoint& x, const Matrix& y);

/// tr(Z1^T Z2). Both vectors must share their base point.
double metric_e(const TangentVector& z1, const TangentVector& z2);

/// (1/rho) tr(W1^T W2) + tr(K1^T K2) with (W, K) from decompose_tangent.
double metric_canonical(const CanonicalMetricParams& params, const TangentVector& z1,
                        const TangentVector& z2);

/// Orthonormal basis (2n x (2n-2p)) of span(X)^perp, built by orthogonalizing
/// the columns of I_{2n} against span(X) twice and keeping the ones that
/// survive.
Matrix orthogonal_complement(const SpPoint& x);

/// W = X^T J^T Z, K = (X_perp^T J X_perp)^{-1} X_perp^T Z.
/// Throws DegenerateComplementError when X_perp^T J X_perp has condition
/// number above 1e14.
WKForm decompose_tangent(const SpPoint& x, const Matrix& basis_perp, const TangentVector& z);

/// Riemannian gradient under the Euclidean metric: the tangent projection of
/// the ambient gradient.
TangentVector riem_grad_e(const SpPoint& x, const Matrix& egrad);

/// Factored S with S J X = Z for a tangent Z. G_X is applied without forming
/// it, in O(n p^2).
SFactorForm grad_s_factor(const SpPoint& x, const TangentVector& z);

enum class CayleyMode {
  dense,    ///< LU of the 2n x 2n matrix I - (t/2) S J.
  low_rank  ///< Woodbury solve through a 4p x 4p system, since rank(S) <= 4p.
};

/// Cayley retraction R_X(tZ) = (I - (t/2) S J)^{-1} (I + (t/2) S J) X, where
/// `s` factors S for Z at X. t == 0 returns X unchanged.
///
/// Throws StepTooLargeError when the system matrix has condition estimate
/// above 1e14 or the result misses the feasibility tolerance.
SpPoint cayley_retract(const SpPoint& x, const SFactorForm& s, double t,
                       CayleyMode mode = CayleyMode::dense);

/// Cayley retraction of a seeded unit tangent at the canonical base point.
SpPoint random_point(int n, int p, std::uint64_t seed);

/// Tangent projection of a seeded Gaussian matrix, scaled to unit norm.
TangentVector random_tangent(const SpPoint& x, std::uint64_t seed);

}  // namespace spopt
