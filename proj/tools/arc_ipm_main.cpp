// Command-line front end: list problems, solve one, run suites, and build
// performance profiles.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arcipm/bench.hpp"
#include "arcipm/errors.hpp"
#include "arcipm/registry.hpp"
#include "arcipm/solvers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUnattained = 2;
constexpr int kExitUsage = 3;

std::vector<arcipm::Method> parse_methods(const std::string& list) {
  std::vector<arcipm::Method> methods;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto m = arcipm::parse_method(item);
    if (!m) {
      throw arcipm::InvalidArguments("unknown method '" + item +
                                     "' (expected arc, arc-simplified, line)");
    }
    methods.push_back(*m);
  }
  if (methods.empty()) {
    throw arcipm::InvalidArguments("no methods selected");
  }
  return methods;
}

int cmd_list() {
  const auto& reg = arcipm::registry();
  for (const auto& name : reg.names()) {
    const auto& prob = reg.get(name);
    std::printf("%-12s %-5s n=%d m=%d p=%d\n", name.c_str(),
                std::string(arcipm::to_string(prob.tag)).c_str(), prob.n,
                prob.m, prob.p);
  }
  return kExitOk;
}

struct SolveOptions {
  std::string problem;
  std::string method = "arc";
  double tol = 1e-8;
  int max_iter = 1000;
  double delta = 1e-3;
  double beta = 0.1;
  double fd_eps = arcipm::kDefaultFdEps;
  std::string trace;
};

int cmd_solve(const SolveOptions& opt) {
  const auto method = arcipm::parse_method(opt.method);
  if (!method) {
    throw arcipm::InvalidArguments("unknown method '" + opt.method + "'");
  }
  const auto& prob = arcipm::registry_get(opt.problem);

  arcipm::SolverConfig cfg;
  cfg.method = *method;
  cfg.tol = opt.tol;
  cfg.max_iter = opt.max_iter;
  cfg.step.delta = opt.delta;
  cfg.step.beta = opt.beta;
  cfg.fd_eps = opt.fd_eps;

  const auto report = arcipm::solve(prob, cfg);
  if (!opt.trace.empty()) {
    arcipm::emit_trace_csv(report, opt.trace);
  }

  std::printf("problem     %s\n", prob.name.c_str());
  std::printf("method      %s\n", opt.method.c_str());
  std::printf("status      %s\n",
              std::string(arcipm::to_string(report.status)).c_str());
  if (!report.reason.empty()) {
    std::printf("reason      %s (iteration %d)\n", report.reason.c_str(),
                report.failed_iteration);
  }
  std::printf("objective   %.10g\n", report.objective);
  std::printf("iterations  %d\n", report.iterations);
  std::printf("merit       %.3e\n", report.merit_final);
  std::printf("time_s      %.6f\n", report.wall_time);
  return report.status == arcipm::SolveStatus::kConverged ? kExitOk
                                                          : kExitUnattained;
}

int cmd_bench(const std::string& suite, const std::string& methods,
              const std::string& out) {
  const auto names = arcipm::resolve_suite(suite);
  const auto ms = parse_methods(methods);
  const auto records = arcipm::run_suite(names, ms, arcipm::SolverConfig{});
  arcipm::emit_csv(records, out);

  int converged = 0;
  for (const auto& r : records) {
    if (r.status == "Converged") ++converged;
  }
  std::printf("%zu runs, %d converged, written to %s\n", records.size(),
              converged, out.c_str());
  return kExitOk;
}

int cmd_profile(const std::string& input, const std::string& metric,
                const std::string& out) {
  arcipm::Metric m;
  if (metric == "iters") {
    m = arcipm::Metric::kIterations;
  } else if (metric == "time") {
    m = arcipm::Metric::kTime;
  } else {
    throw arcipm::InvalidArguments("metric must be iters or time");
  }
  const auto curves =
      arcipm::performance_profile(arcipm::parse_runs_csv(input), m);
  arcipm::emit_csv(curves, out);
  std::printf("%zu curves written to %s\n", curves.size(), out.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arc-search and line-search interior-point NLP solvers"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-problems", "List built-in problems");

  SolveOptions solve_opt;
  auto* solve = app.add_subcommand("solve", "Solve one built-in problem");
  solve->add_option("--problem", solve_opt.problem, "Problem name")
      ->required();
  solve->add_option("--method", solve_opt.method,
                    "arc, arc-simplified, or line")
      ->capture_default_str();
  solve->add_option("--tol", solve_opt.tol, "Merit stopping threshold")
      ->capture_default_str();
  solve->add_option("--max-iter", solve_opt.max_iter, "Iteration limit")
      ->capture_default_str();
  solve->add_option("--delta", solve_opt.delta, "Fraction-to-boundary")
      ->capture_default_str();
  solve->add_option("--beta", solve_opt.beta, "Sufficient-decrease constant")
      ->capture_default_str();
  solve->add_option("--fd-eps", solve_opt.fd_eps,
                    "Step for the third-order forward difference")
      ->capture_default_str();
  solve->add_option("--trace", solve_opt.trace, "Per-iteration CSV output");

  std::string suite;
  std::string methods = "arc,line";
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Run a problem suite");
  bench->add_option("--suite", suite, "qcqp, others, all, or NAME,NAME,...")
      ->required();
  bench->add_option("--methods", methods, "Comma-separated methods")
      ->capture_default_str();
  bench->add_option("--out", bench_out, "Output CSV")->required();

  std::string input;
  std::string metric = "iters";
  std::string profile_out;
  auto* profile = app.add_subcommand("profile", "Performance profile");
  profile->add_option("--input", input, "Runs CSV from bench")->required();
  profile->add_option("--metric", metric, "iters or time")
      ->capture_default_str();
  profile->add_option("--out", profile_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*list) return cmd_list();
    if (*solve) return cmd_solve(solve_opt);
    if (*bench) return cmd_bench(suite, methods, bench_out);
    if (*profile) return cmd_profile(input, metric, profile_out);
  } catch (const arcipm::UnknownProblem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const arcipm::InvalidArguments& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const arcipm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
