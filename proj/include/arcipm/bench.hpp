#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arcipm/solvers.hpp"

namespace arcipm {

struct RunRecord {
  std::string problem;
  std::string method;
  std::string status;
  double objective = 0.0;
  int iterations = 0;
  double time_s = 0.0;
  std::string tag;

  bool operator==(const RunRecord&) const = default;
};

struct ProfilePoint {
  double tau = 1.0;
  double fraction = 0.0;

  bool operator==(const ProfilePoint&) const = default;
};

struct ProfileCurve {
  std::string method;
  std::vector<ProfilePoint> points;
};

enum class Metric { kIterations, kTime };

/// Expands "qcqp", "others", "all", or a comma-separated list of names.
/// Throws UnknownProblem if any name is absent from the registry.
std::vector<std::string> resolve_suite(const std::string& suite);

/// One record per (problem, method), sorted by problem then method name.
/// Solves may run concurrently; the output does not depend on scheduling.
/// Throws InvalidArguments for an empty method set and UnknownProblem
/// before any solve starts.
std::vector<RunRecord> run_suite(const std::vector<std::string>& problems,
                                 const std::vector<Method>& methods,
                                 const SolverConfig& cfg);

/**
 * Performance profile over the records. A problem enters when at least one
 * method converged on it; r_{p,s} = metric_{p,s} / min_s metric_{p,s} for
 * converged runs and +inf otherwise. Each curve is evaluated on the shared,
 * deduplicated grid of finite ratios. Throws EmptyInput when no problem
 * qualifies.
 */
std::vector<ProfileCurve> performance_profile(
    const std::vector<RunRecord>& records, Metric metric);

/// Header: problem,method,status,objective,iterations,time_s,tag
void emit_csv(const std::vector<RunRecord>& records,
              const std::filesystem::path& path);
/// Header: method,tau,fraction
void emit_csv(const std::vector<ProfileCurve>& curves,
              const std::filesystem::path& path);

std::vector<RunRecord> parse_runs_csv(const std::filesystem::path& path);

/// Per-iteration trace of one solve.
void emit_trace_csv(const SolveReport& report,
                    const std::filesystem::path& path);

/// %.10g formatting used for every float in the CSV outputs.
std::string format_float(double value);

}  // namespace arcipm
