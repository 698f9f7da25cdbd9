#pragma once

// `spopt nearest|symeig|check` command implementations and their output
// formats: a CSV iterate trace and a JSON run summary per run.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spopt/solver.hpp"

namespace spopt::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes shared by all subcommands.
enum ExitCode : int {
  kExitConverged = 0,
  kExitInputError = 1,
  kExitMaxIter = 2,
  kExitLineSearchFailure = 3,
  kExitCheckFailed = 4,
};

struct RunSummary {
  std::string command;
  int n = 0;
  int p = 0;
  std::uint64_t seed = 0;
  nlohmann::json config;  ///< solver settings plus command-specific inputs
  std::string status;
  int iterations = 0;
  double final_f = 0.0;
  double final_gradnorm = 0.0;
  double final_feasibility = 0.0;
  double elapsed_seconds = 0.0;
  std::optional<std::vector<double>> extracted_eigenvalues;
  std::optional<double> error_1norm;

  bool operator==(const RunSummary&) const = default;
};

void to_json(nlohmann::json& j, const RunSummary& s);
void from_json(const nlohmann::json& j, RunSummary& s);

/// Columns: iter,f,gradnorm,step,feas_residual,elapsed_seconds; values with
/// 17 significant digits.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

/// Entry point behind `main`. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spopt::cli
