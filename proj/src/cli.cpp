#include "spopt/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "spopt/errors.hpp"
#include "spopt/matrix_market.hpp"
#include "spopt/problems.hpp"

namespace spopt::cli {

using nlohmann::json;

void to_json(json& j, const RunSummary& s) {
  j = json{{"command", s.command},
           {"n", s.n},
           {"p", s.p},
           {"seed", s.seed},
           {"config", s.config},
           {"status", s.status},
           {"iterations", s.iterations},
           {"final_f", s.final_f},
           {"final_gradnorm", s.final_gradnorm},
           {"final_feasibility", s.final_feasibility},
           {"elapsed_seconds", s.elapsed_seconds}};
  if (s.extracted_eigenvalues) j["extracted_eigenvalues"] = *s.extracted_eigenvalues;
  if (s.error_1norm) j["error_1norm"] = *s.error_1norm;
}

void from_json(const json& j, RunSummary& s) {
  j.at("command").get_to(s.command);
  j.at("n").get_to(s.n);
  j.at("p").get_to(s.p);
  j.at("seed").get_to(s.seed);
  s.config = j.at("config");
  j.at("status").get_to(s.status);
  j.at("iterations").get_to(s.iterations);
  j.at("final_f").get_to(s.final_f);
  j.at("final_gradnorm").get_to(s.final_gradnorm);
  j.at("final_feasibility").get_to(s.final_feasibility);
  j.at("elapsed_seconds").get_to(s.elapsed_seconds);
  s.extracted_eigenvalues.reset();
  s.error_1norm.reset();
  if (j.contains("extracted_eigenvalues"))
    s.extracted_eigenvalues = j.at("extracted_eigenvalues").get<std::vector<double>>();
  if (j.contains("error_1norm")) s.error_1norm = j.at("error_1norm").get<double>();
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iter,f,gradnorm,step,feas_residual,elapsed_seconds\n";
  char buf[160];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.iter, r.f, r.gradnorm,
                  r.step, r.feas_residual, r.elapsed_seconds);
    out << buf;
  }
}

namespace {

struct CommonOptions {
  int n = 20;
  int p = 5;
  std::uint64_t seed = 1;
  int max_iter = 2000;
  double tol = 1e-6;
  std::string out_dir = ".";
  std::string matrix;
  bool low_rank = false;
};

void add_common(CLI::App& app, CommonOptions& o) {
  app.add_option("--n", o.n, "half the ambient row count (X is 2n x 2p)");
  app.add_option("--p", o.p, "half the column count");
  app.add_option("--seed", o.seed, "seed for instance generation (SPOPT_SEED overrides)");
  app.add_option("--max-iter", o.max_iter, "iteration cap");
  app.add_option("--tol", o.tol, "stop when ||grad f||_F falls to this value");
  app.add_option("--out-dir", o.out_dir, "directory for trace.csv, summary.json, solution.mtx");
  app.add_option("--matrix", o.matrix, "read the data matrix from a Matrix Market file");
  app.add_flag("--lowrank", o.low_rank, "use the low-rank (Woodbury) Cayley solve");
}

SolverConfig solver_config(const CommonOptions& o) {
  SolverConfig cfg;
  cfg.max_iter = o.max_iter;
  cfg.tol_gradnorm = o.tol;
  cfg.cayley = o.low_rank ? CayleyMode::low_rank : CayleyMode::dense;
  return cfg;
}

json config_echo(const SolverConfig& cfg) {
  return json{{"max_iter", cfg.max_iter},
              {"tol_gradnorm", cfg.tol_gradnorm},
              {"nonmonotone_eta", cfg.nonmonotone_eta},
              {"armijo_rho", cfg.armijo_rho},
              {"backtrack_factor", cfg.backtrack_factor},
              {"max_backtracks", cfg.max_backtracks},
              {"bb_min", cfg.bb_min},
              {"bb_max", cfg.bb_max},
              {"initial_step", cfg.initial_step},
              {"cayley", cfg.cayley == CayleyMode::dense ? "dense" : "low_rank"}};
}

void check_dims(int n, int p) {
  if (n < 1 || p < 1 || p > n)
    throw DimensionError("dimension error: need 1 <= p <= n (got n = " + std::to_string(n) +
                         ", p = " + std::to_string(p) + ")");
}

int exit_code(SolverStatus status) {
  switch (status) {
    case SolverStatus::converged:
      return kExitConverged;
    case SolverStatus::max_iter:
      return kExitMaxIter;
    case SolverStatus::line_search_failure:
      return kExitLineSearchFailure;
  }
  return kExitInputError;
}

RunSummary summarize(const std::string& command, const SolverReport& report, std::uint64_t seed,
                     json config) {
  const TraceRow& last = report.trace.back();
  RunSummary s;
  s.command = command;
  s.n = report.final_point.n();
  s.p = report.final_point.p();
  s.seed = seed;
  s.config = std::move(config);
  s.status = to_string(report.status);
  s.iterations = report.iterations;
  s.final_f = last.f;
  s.final_gradnorm = last.gradnorm;
  s.final_feasibility = last.feas_residual;
  s.elapsed_seconds = last.elapsed_seconds;
  return s;
}

void write_outputs(const std::string& dir, const SolverReport& report, const RunSummary& s) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream csv(fs::path(dir) / "trace.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write trace.csv in '" + dir + "'");
    write_trace_csv(csv, report.trace);
  }
  {
    std::ofstream js(fs::path(dir) / "summary.json", std::ios::binary);
    if (!js) throw std::runtime_error("cannot write summary.json in '" + dir + "'");
    js << json(s).dump(2) << '\n';
  }
  write_matrix((fs::path(dir) / "solution.mtx").string(), report.final_point.x());
}

void print_status(std::ostream& out, const RunSummary& s) {
  out << s.command << ": " << s.status << " after " << s.iterations << " iterations, f = "
      << std::setprecision(17) << s.final_f << ", ||grad|| = " << s.final_gradnorm
      << ", feasibility = " << s.final_feasibility << '\n';
}

// --- nearest ---------------------------------------------------------------

int cmd_nearest(const CommonOptions& o, double sigma, std::ostream& out) {
  const SolverConfig cfg = solver_config(o);
  json config = config_echo(cfg);
  config["sigma"] = sigma;

  Matrix a;
  if (!o.matrix.empty()) {
    a = read_matrix(o.matrix);
    if (a.rows() % 2 != 0 || a.cols() % 2 != 0)
      throw DimensionError("dimension error: target matrix must be 2n x 2p");
    check_dims(static_cast<int>(a.rows() / 2), static_cast<int>(a.cols() / 2));
    config["matrix"] = o.matrix;
  } else {
    check_dims(o.n, o.p);
    a = gen_near_symplectic(o.n, o.p, sigma, o.seed).problem.a;
  }
  const int n = static_cast<int>(a.rows() / 2);
  const int p = static_cast<int>(a.cols() / 2);

  const SpPoint x0(canonical_base_point(n, p));
  const SolverReport report = minimize(nearest_objective({a}), x0, cfg);
  const RunSummary s = summarize("nearest", report, o.seed, std::move(config));
  write_outputs(o.out_dir, report, s);
  print_status(out, s);
  return exit_code(report.status);
}

// --- symeig ----------------------------------------------------------------

std::vector<double> parse_spectrum(const std::string& text) {
  std::vector<double> d;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0' || !std::isfinite(v))
      throw ParameterError("invalid spectrum entry '" + item + "'");
    if (!(v > 0.0))
      throw ParameterError("spectrum entries must be positive (got " + item + ")");
    d.push_back(v);
  }
  if (d.empty()) throw ParameterError("empty spectrum");
  return d;
}

// Planted values beyond the listed ones are drawn uniformly from
// [max + 1, max + 5) so that the listed values stay the smallest.
std::vector<double> pad_spectrum(std::vector<double> d, int n, std::uint64_t seed) {
  if (d.size() > static_cast<std::size_t>(n))
    throw DimensionError("spectrum has more than n entries");
  const double top = *std::max_element(d.begin(), d.end());
  Rng rng(~seed);
  while (d.size() < static_cast<std::size_t>(n)) d.push_back(top + 1.0 + 4.0 * rng.uniform());
  return d;
}

int cmd_symeig(const CommonOptions& o, const std::string& spectrum, std::ostream& out,
               std::ostream& err) {
  SolverConfig cfg = solver_config(o);
  json config = config_echo(cfg);

  std::optional<SymEigProblem> prob;
  std::vector<double> planted;
  if (!o.matrix.empty()) {
    Matrix a = read_matrix(o.matrix);
    if (a.rows() != a.cols() || a.rows() % 2 != 0)
      throw DimensionError("dimension error: data matrix must be 2n x 2n");
    check_dims(static_cast<int>(a.rows() / 2), o.p);
    config["matrix"] = o.matrix;
    prob.emplace(std::move(a), o.p);
  } else {
    check_dims(o.n, o.p);
    planted = pad_spectrum(parse_spectrum(spectrum), o.n, o.seed);
    config["spectrum"] = spectrum;
    prob.emplace(gen_spd_with_symplectic_spectrum(o.n, planted, o.p, o.seed));
  }

  const SpPoint x0(canonical_base_point(prob->n(), prob->p()));
  const SolverReport report = minimize(symeig_objective(*prob), x0, cfg);
  RunSummary s = summarize("symeig", report, o.seed, std::move(config));

  const SymplecticSpectrum spec = extract_symplectic_eigenvalues(report.final_point, prob->a());
  if (spec.not_converged)
    err << "warning: final iterate is not near a minimizer; eigenvalues are unreliable\n";
  s.extracted_eigenvalues = std::vector<double>(spec.values.begin(), spec.values.end());
  if (!planted.empty()) {
    std::sort(planted.begin(), planted.end());
    double e = 0.0;
    for (int i = 0; i < prob->p(); ++i)
      e += std::abs(spec.values(i) - planted[static_cast<std::size_t>(i)]);
    s.error_1norm = e;
  }

  write_outputs(o.out_dir, report, s);
  print_status(out, s);
  out << "symplectic eigenvalues:";
  for (double v : *s.extracted_eigenvalues) out << ' ' << std::setprecision(16) << v;
  out << '\n';
  if (s.error_1norm) out << "error (1-norm): " << std::setprecision(3) << *s.error_1norm << '\n';
  return exit_code(report.status);
}

// --- check -----------------------------------------------------------------

struct SuiteResult {
  std::string name;
  double value;
  double tolerance;
  bool pass() const { return value <= tolerance; }
};

std::vector<SuiteResult> run_suites(int n, int p, std::uint64_t seed, int trials,
                                    bool corrupt_gradient) {
  std::vector<SuiteResult> out;
  double lyap = 0.0, idem = 0.0, orth = 0.0, skew = 0.0, feas = 0.0, ident = 0.0;
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t s = seed + 1000u * static_cast<std::uint64_t>(k);
    Rng rng(s);
    const SpPoint x = random_point(n, p, s);
    const Matrix y = rng.gaussian_matrix(2 * n, 2 * p);
    const double ynorm = y.norm();

    const Matrix b = rng.gaussian_matrix(2 * p, 2 * p);
    const Matrix m = b.transpose() * b + Matrix::Identity(2 * p, 2 * p);
    const Matrix rhs = skew_part(rng.gaussian_matrix(2 * p, 2 * p));
    const Matrix om = solve_sym_lyapunov(m, rhs).omega;
    lyap = std::max(lyap, (m * om + om * m - rhs).norm() / std::max(rhs.norm(), 1e-300));

    const OrthogonalSplit split = split_e(x, y);
    const Matrix again = split_e(x, split.tangent).tangent;
    idem = std::max(idem, (again - split.tangent).norm() / ynorm);
    orth = std::max(orth, std::abs(frob_inner(split.tangent, split.normal.normal)) / (ynorm * ynorm));
    const Matrix& w = split.normal.omega.omega;
    skew = std::max(skew, (w + w.transpose()).norm() / std::max(1.0, w.norm()));

    const TangentVector z = random_tangent(x, s + 1);
    const SFactorForm sf = grad_s_factor(x, z);
    const double t = 2.0 * rng.uniform() - 1.0;
    try {
      const SpPoint r = cayley_retract(x, sf, t);
      feas = std::max(feas, r.residual() / r.x().norm());
    } catch (const StepTooLargeError&) {
    }
    ident = std::max(ident, (cayley_retract(x, sf, 0.0).x() - x.x()).norm());
  }
  out.push_back({"lyapunov_residual", lyap, 1e-10});
  out.push_back({"projection_idempotence", idem, 1e-10});
  out.push_back({"projection_orthogonality", orth, 1e-10});
  out.push_back({"normal_omega_skew", skew, 1e-12});
  out.push_back({"retraction_feasibility", feas, 1e-10});
  out.push_back({"retraction_at_zero", ident, 0.0});

  std::vector<double> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = 1.0 + i;
  const SymEigProblem eig = gen_spd_with_symplectic_spectrum(n, d, p, seed);
  const NearestInstance near = gen_near_symplectic(n, p, 0.5, seed);
  struct Named {
    const char* name;
    Objective obj;
  };
  std::vector<Named> objectives{{"gradient_nearest", nearest_objective(near.problem)},
                                {"gradient_symeig", symeig_objective(eig)}};
  for (auto& [name, obj] : objectives) {
    if (corrupt_gradient) {
      auto inner = obj.eval_egrad;
      obj.eval_egrad = [inner](const Matrix& x) -> Matrix { return 2.0 * inner(x); };
    }
    double worst = 0.0;
    for (int k = 0; k < std::max(1, trials / 2); ++k) {
      const SpPoint x = random_point(n, p, seed + 7u + static_cast<std::uint64_t>(k));
      worst = std::max(worst, check_gradient(obj, x, 10, 1e-5, seed + 31u * k).max_relative_error);
    }
    out.push_back({name, worst, 1e-5});
  }
  return out;
}

int cmd_check(int n, int p, std::uint64_t seed, int trials, bool corrupt, std::ostream& out) {
  check_dims(n, p);
  if (trials < 1) throw ParameterError("--trials must be positive");
  const auto results = run_suites(n, p, seed, trials, corrupt);
  bool ok = true;
  out << std::left << std::setw(28) << "suite" << std::setw(14) << "max error" << std::setw(12)
      << "tolerance" << "result\n";
  for (const auto& r : results) {
    ok = ok && r.pass();
    out << std::left << std::setw(28) << r.name << std::setw(14) << std::setprecision(3)
        << std::scientific << r.value << std::setw(12) << r.tolerance << std::defaultfloat
        << (r.pass() ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitConverged : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riemannian optimization on the symplectic Stiefel manifold", "spopt"};
  app.set_version_flag("--version", std::string("spopt ") + kVersion);
  app.require_subcommand(1);

  CommonOptions near_opts;
  double sigma = 0.1;
  auto* near = app.add_subcommand("nearest", "nearest symplectic matrix to a target A");
  add_common(*near, near_opts);
  near->add_option("--sigma", sigma, "noise level of the generated target");

  CommonOptions eig_opts;
  eig_opts.n = 100;
  eig_opts.tol = 1e-8;
  eig_opts.max_iter = 5000;
  std::string spectrum = "1,2,3,4,5";
  auto* eig = app.add_subcommand("symeig", "smallest symplectic eigenvalues of an SPD matrix");
  add_common(*eig, eig_opts);
  eig->add_option("--spectrum", spectrum,
                  "planted symplectic eigenvalues (comma separated; padded with larger values)");

  int check_n = 4, check_p = 2, trials = 20;
  std::uint64_t check_seed = 1;
  bool corrupt = false;
  auto* check = app.add_subcommand("check", "run the geometry and gradient invariant suites");
  check->add_option("--n", check_n);
  check->add_option("--p", check_p);
  check->add_option("--seed", check_seed);
  check->add_option("--trials", trials, "random instances per suite");
  check->add_flag("--inject-grad-corruption", corrupt)->group("");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (const char* env = std::getenv("SPOPT_SEED"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (*end != '\0') throw ParameterError("SPOPT_SEED is not an unsigned integer");
      near_opts.seed = eig_opts.seed = check_seed = v;
    }
    if (near->parsed()) return cmd_nearest(near_opts, sigma, out);
    if (eig->parsed()) return cmd_symeig(eig_opts, spectrum, out, err);
    return cmd_check(check_n, check_p, check_seed, trials, corrupt, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace spopt::cli
