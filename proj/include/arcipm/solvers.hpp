#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arcipm/kernels.hpp"
#include "arcipm/kkt.hpp"
#include "arcipm/newton.hpp"
#include "arcipm/step_control.hpp"

namespace arcipm {

enum class Method { kArc, kArcSimplified, kLine };

std::string_view to_string(Method method);
/// Parses "arc", "arc-simplified" or "line".
std::optional<Method> parse_method(std::string_view name);

enum class InitStrategy {
  /// x = x0, s = max(g(x0), 1), w = z = e, y = 0.
  kStandard,
};

/// Everything the solver saw in one accepted iteration. Passed to
/// SolverConfig::observer when set.
struct IterationSnapshot {
  int k = 0;
  const IterateV* v = nullptr;
  const KktResidual* res = nullptr;
  const ArcDerivatives* derivatives = nullptr;
  const StepOutcome* step = nullptr;
  double sigma = 0.0;
  double gamma = 0.0;
};

struct SolverConfig {
  Method method = Method::kArc;
  double tol = 1e-8;
  int max_iter = 1000;
  StepParams step;
  double fd_eps = kDefaultFdEps;
  InitStrategy init = InitStrategy::kStandard;
  ExecPolicy policy = ExecPolicy::kParallel;
  std::function<void(const IterationSnapshot&)> observer;

  void validate() const;
};

enum class SolveStatus { kConverged, kIterationLimit, kUnattained };

std::string_view to_string(SolveStatus status);

struct IterationRecord {
  int k = 0;
  double merit = 0.0;
  double mu = 0.0;
  double alpha = 0.0;
  double alpha_tilde = 0.0;
  bool hat_active = false;
  double sigma = 0.0;
  int backtracks = 0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kUnattained;
  /// Why the run stopped early; empty unless status is kUnattained.
  std::string reason;
  /// Iteration at which the failure occurred, or -1.
  int failed_iteration = -1;
  int iterations = 0;
  double objective = 0.0;
  double merit_final = 0.0;
  double wall_time = 0.0;
  std::vector<IterationRecord> trace;
  IterateV final_iterate;
};

IterateV initialize(const ProblemDef& prob,
                    InitStrategy init = InitStrategy::kStandard);

/// Arc-search interior-point method (full or simplified second derivative).
SolveReport solve_arc(const ProblemDef& prob, const SolverConfig& cfg);

/// Line-search interior-point baseline.
SolveReport solve_line(const ProblemDef& prob, const SolverConfig& cfg);

/// Dispatches on cfg.method.
SolveReport solve(const ProblemDef& prob, const SolverConfig& cfg);

}  // namespace arcipm
