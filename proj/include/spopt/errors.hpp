#pragma once

#include <stdexcept>
#include <string>

namespace spopt {

/// Shape or size mismatch in a matrix argument.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar parameter outside its admissible range (rho <= 0, d_i <= 0, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A precondition on matrix structure was violated (e.g. a right-hand side
/// that should be skew-symmetric is not).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical routine failed; carries the residual it stopped at.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NotPositiveDefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// (I - t/2 S J) is singular or too badly conditioned; the caller should
/// shrink the step.
class StepTooLargeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// X_perp^T J X_perp is numerically singular.
class DegenerateComplementError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed input file; the message names the offending location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace spopt
