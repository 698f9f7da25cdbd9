#pragma once

// The two applications: nearest symplectic matrix and symplectic eigenvalues
// by trace minimization, with seeded generators that plant the answer.

#include <cstdint>
#include <span>
#include <utility>

#include "spopt/manifold.hpp"
#include "spopt/rng.hpp"
#include "spopt/solver.hpp"

namespace spopt {

/// min ||X - A||_F^2 over Sp(2p, 2n).
struct NearestProblem {
  Matrix a;
};

/// min tr(X^T A X) over Sp(2p, 2n) for symmetric positive-definite A.
class SymEigProblem {
 public:
  /// Validates symmetry (1e-12 relative) and positive definiteness; A is
  /// stored symmetrized.
  SymEigProblem(Matrix a, int p);

  const Matrix& a() const { return a_; }
  int n() const { return static_cast<int>(a_.rows() / 2); }
  int p() const { return p_; }

 private:
  Matrix a_;
  int p_;
};

/// f(X) = ||X - A||_F^2, egrad = 2 (X - A).
Objective nearest_objective(const NearestProblem& prob);

/// f(X) = tr(X^T A X), egrad = 2 A X.
Objective symeig_objective(const SymEigProblem& prob);

struct SymplecticSpectrum {
  /// Symplectic eigenvalues of the 2p x 2p matrix X^T A X, ascending. At a
  /// minimizer of the trace objective these are the p smallest symplectic
  /// eigenvalues of A.
  Vector values;
  /// ((X^T A X)_{ii} + (X^T A X)_{p+i,p+i}) / 2, in column order.
  Vector diagonal_average;
  /// max_i |(X^T A X)_{ii} - (X^T A X)_{p+i,p+i}| / d_i.
  double half_mismatch = 0.0;
  /// tr(X^T A X) exceeds 2 sum(values) by more than 1e-3 relative. Equality
  /// holds at every critical point of the trace objective, so this flags an
  /// unconverged X (it cannot tell a saddle from the minimizer).
  bool not_converged = false;
};

SymplecticSpectrum extract_symplectic_eigenvalues(const SpPoint& x, const Matrix& a);

/// Symplectic eigenvalues d_1 <= ... <= d_m of a 2m x 2m SPD matrix, from the
/// doubled spectrum of (B^{1/2} J B^{1/2})^T (B^{1/2} J B^{1/2}).
Vector williamson_spectrum(const Matrix& b);

struct NearestInstance {
  NearestProblem problem;
  SpPoint ground_truth;
};

/// ground_truth = random_point(n, p, seed); A = ground_truth + sigma G, with
/// G drawn from the same seeded stream right after the tangent used for the
/// point.
NearestInstance gen_near_symplectic(int n, int p, double sigma, std::uint64_t seed);

/// Random 2n x 2n symplectic M = (I - H)^{-1} (I + H), H = S J with S a
/// seeded symmetric matrix scaled to spectral norm `scale`.
Matrix random_symplectic_matrix(int n, Rng& rng, double scale = 0.5);

/// A = M^T diag(d, d) M for a seeded symplectic M, so that A has symplectic
/// eigenvalues exactly d. Throws ParameterError if any d_i <= 0.
SymEigProblem gen_spd_with_symplectic_spectrum(int n, std::span<const double> d, int p,
                                               std::uint64_t seed);

}  // namespace spopt
