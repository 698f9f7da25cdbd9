#include "spopt/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "spopt/errors.hpp"

namespace spopt {

void SolverConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ParameterError(std::string("SolverConfig: ") + name + " must be positive");
  };
  if (max_iter < 0) throw ParameterError("SolverConfig: max_iter must be non-negative");
  if (max_backtracks < 0)
    throw ParameterError("SolverConfig: max_backtracks must be non-negative");
  positive(tol_gradnorm, "tol_gradnorm");
  positive(nonmonotone_eta, "nonmonotone_eta");
  if (!(nonmonotone_eta < 1.0)) throw ParameterError("SolverConfig: nonmonotone_eta must be < 1");
  positive(armijo_rho, "armijo_rho");
  positive(backtrack_factor, "backtrack_factor");
  if (!(backtrack_factor < 1.0))
    throw ParameterError("SolverConfig: backtrack_factor must be < 1");
  positive(bb_min, "bb_min");
  positive(bb_max, "bb_max");
  if (!(bb_min <= bb_max)) throw ParameterError("SolverConfig: bb_min must not exceed bb_max");
  positive(initial_step, "initial_step");
}

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::converged:
      return "converged";
    case SolverStatus::max_iter:
      return "max_iter";
    case SolverStatus::line_search_failure:
      return "line_search_failure";
  }
  return "unknown";
}

double bb_step(const Matrix& dx, const Matrix& dg, bool odd_iteration, double bb_min,
               double bb_max, double fallback) {
  constexpr double kTiny = 1e-300;
  const double sy = std::abs(frob_inner(dx, dg));
  double num = 0.0;
  double den = 0.0;
  if (odd_iteration) {
    num = frob_inner(dx, dx);
    den = sy;
  } else {
    num = sy;
    den = frob_inner(dg, dg);
  }
  if (!(den > kTiny) || !std::isfinite(num)) return fallback;
  return std::clamp(num / den, bb_min, bb_max);
}

namespace {

using Clock = std::chrono::steady_clock;

double checked_f(const Objective& obj, const Matrix& x, int iteration) {
  const double f = obj.eval_f(x);
  if (!std::isfinite(f))
    throw ObjectiveError("objective returned a non-finite value at iterate " +
                             std::to_string(iteration),
                         iteration);
  return f;
}

Matrix checked_egrad(const Objective& obj, const Matrix& x, int iteration) {
  Matrix g = obj.eval_egrad(x);
  if (g.rows() != x.rows() || g.cols() != x.cols())
    throw DimensionError("objective gradient has the wrong shape");
  if (!g.allFinite())
    throw ObjectiveError("objective gradient is non-finite at iterate " +
                             std::to_string(iteration),
                         iteration);
  return g;
}

}  // namespace

SolverReport minimize(const Objective& obj, const SpPoint& x0, const SolverConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  auto elapsed = [&start] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  SpPoint x = x0;
  double f = checked_f(obj, x.x(), 0);
  TangentVector grad = riem_grad_e(x, checked_egrad(obj, x.x(), 0));
  double gradnorm = grad.z().norm();

  SolverReport report{x, 0, SolverStatus::max_iter, {}};
  report.trace.push_back({0, f, gradnorm, 0.0, x.residual(), elapsed(), f});

  double weight = 1.0;  // Zhang-Hager Q_k
  double reference = f;  // Zhang-Hager C_k
  double step = cfg.initial_step;

  for (int k = 0;; ++k) {
    if (gradnorm <= cfg.tol_gradnorm) {
      report.status = SolverStatus::converged;
      break;
    }
    if (k >= cfg.max_iter) {
      report.status = SolverStatus::max_iter;
      break;
    }

    const SFactorForm s = grad_s_factor(x, grad);
    const double slope = gradnorm * gradnorm;
    double t = step;
    bool accepted = false;
    SpPoint trial = x;
    double f_trial = f;
    for (int b = 0; b <= cfg.max_backtracks; ++b) {
      try {
        trial = cayley_retract(x, s, -t, cfg.cayley);
      } catch (const StepTooLargeError&) {
        t *= cfg.backtrack_factor;
        continue;
      }
      f_trial = checked_f(obj, trial.x(), k + 1);
      if (f_trial <= reference - cfg.armijo_rho * t * slope) {
        accepted = true;
        break;
      }
      t *= cfg.backtrack_factor;
    }
    if (!accepted) {
      report.status = SolverStatus::line_search_failure;
      break;
    }

    TangentVector grad_next = riem_grad_e(trial, checked_egrad(obj, trial.x(), k + 1));
    step = bb_step(trial.x() - x.x(), grad_next.z() - grad.z(), k % 2 == 1, cfg.bb_min,
                   cfg.bb_max, cfg.initial_step);

    const double accepted_against = reference;
    const double weight_next = cfg.nonmonotone_eta * weight + 1.0;
    reference = (cfg.nonmonotone_eta * weight * reference + f_trial) / weight_next;
    weight = weight_next;

    x = std::move(trial);
    f = f_trial;
    grad = std::move(grad_next);
    gradnorm = grad.z().norm();
    report.iterations = k + 1;
    report.trace.push_back(
        {k + 1, f, gradnorm, t, x.residual(), elapsed(), accepted_against});
  }

  report.final_point = x;
  return report;
}

GradientCheckReport check_gradient(const Objective& obj, const SpPoint& x, int trials, double h,
                                   std::uint64_t seed) {
  if (trials < 1) throw ParameterError("check_gradient: trials must be positive");
  if (!(h > 0.0)) throw ParameterError("check_gradient: h must be positive");

  const TangentVector grad = riem_grad_e(x, checked_egrad(obj, x.x(), 0));
  const double gradnorm = grad.z().norm();

  GradientCheckReport out;
  for (int i = 0; i < trials; ++i) {
    const TangentVector z = random_tangent(x, seed + static_cast<std::uint64_t>(i));
    const SFactorForm s = grad_s_factor(x, z);
    const double fp = checked_f(obj, cayley_retract(x, s, h).x(), 0);
    const double fm = checked_f(obj, cayley_retract(x, s, -h).x(), 0);
    const double fd = (fp - fm) / (2.0 * h);
    const double dir = metric_e(grad, z);
    const double diff = std::abs(dir - fd);
    const double scale = std::max(std::abs(fd), 1e-3 * gradnorm);
    const double rel = diff == 0.0 ? 0.0 : diff / std::max(scale, 1e-300);

    out.relative_errors.push_back(rel);
    out.directional.push_back(dir);
    out.finite_difference.push_back(fd);
    out.max_relative_error = std::max(out.max_relative_error, rel);
    out.max_abs_directional = std::max(out.max_abs_directional, std::abs(dir));
  }
  return out;
}

}  // namespace spopt
