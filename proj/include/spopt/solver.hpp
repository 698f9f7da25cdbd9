#pragma once

// Riemannian gradient descent on Sp(2p, 2n) under the Euclidean metric, with
// Cayley retraction, alternating Barzilai-Borwein step sizes and a
// Zhang-Hager nonmonotone Armijo line search.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spopt/manifold.hpp"

namespace spopt {

/// f and the gradient of a smooth extension of f to R^{2n x 2p}.
struct Objective {
  std::function<double(const Matrix&)> eval_f;
  std::function<Matrix(const Matrix&)> eval_egrad;
};

struct SolverConfig {
  int max_iter = 2000;
  double tol_gradnorm = 1e-6;  ///< absolute, on ||grad f||_F
  double nonmonotone_eta = 0.85;
  double armijo_rho = 1e-4;
  double backtrack_factor = 0.5;
  int max_backtracks = 30;
  double bb_min = 1e-15;
  double bb_max = 1e15;
  double initial_step = 1e-3;
  CayleyMode cayley = CayleyMode::dense;

  /// Throws ParameterError naming the first invalid field.
  void validate() const;
};

enum class SolverStatus { converged, max_iter, line_search_failure };

const char* to_string(SolverStatus status);

struct TraceRow {
  int iter = 0;
  double f = 0.0;
  double gradnorm = 0.0;
  double step = 0.0;  ///< step that produced this iterate; 0 for the start
  double feas_residual = 0.0;
  double elapsed_seconds = 0.0;
  /// Nonmonotone reference value C_k the step was accepted against (the
  /// start row carries f itself).
  double reference = 0.0;
};

struct SolverReport {
  SpPoint final_point;
  int iterations = 0;
  SolverStatus status = SolverStatus::max_iter;
  std::vector<TraceRow> trace;
};

/// The objective returned NaN or infinity.
class ObjectiveError : public std::runtime_error {
 public:
  ObjectiveError(const std::string& what, int iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

SolverReport minimize(const Objective& obj, const SpPoint& x0, const SolverConfig& cfg = {});

/// Alternating Barzilai-Borwein step from dx = X_k - X_{k-1} and
/// dg = grad_k - grad_{k-1}: <dx,dg>/<dg,dg> on even iterations,
/// <dx,dx>/<dx,dg> on odd ones (absolute values), clamped to
/// [bb_min, bb_max]. Falls back to `fallback` when a denominator is <= 1e-300.
double bb_step(const Matrix& dx, const Matrix& dg, bool odd_iteration, double bb_min,
               double bb_max, double fallback);

struct GradientCheckReport {
  /// Per direction: |<grad, Z> - fd| / max(|fd|, 1e-3 ||grad||), where fd is
  /// the central difference of f along the Cayley curve t -> R_X(tZ).
  std::vector<double> relative_errors;
  std::vector<double> directional;  ///< <grad, Z>
  std::vector<double> finite_difference;
  double max_relative_error = 0.0;
  double max_abs_directional = 0.0;
};

GradientCheckReport check_gradient(const Objective& obj, const SpPoint& x, int trials, double h,
                                   std::uint64_t seed = 1);

}  // namespace spopt
