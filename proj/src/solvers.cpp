#include "arcipm/solvers.hpp"

#include <chrono>

#include "arcipm/errors.hpp"

namespace arcipm {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kArc:
      return "arc";
    case Method::kArcSimplified:
      return "arc-simplified";
    case Method::kLine:
      return "line";
  }
  return "arc";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::kArc, Method::kArcSimplified, Method::kLine}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged:
      return "Converged";
    case SolveStatus::kIterationLimit:
      return "IterationLimit";
    case SolveStatus::kUnattained:
      return "Unattained";
  }
  return "Unattained";
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidArguments("tol must be positive");
  if (max_iter < 1) throw InvalidArguments("max_iter must be at least 1");
  if (!(fd_eps > 0.0)) throw InvalidArguments("fd_eps must be positive");
  step.validate();
}

IterateV initialize(const ProblemDef& prob, InitStrategy) {
  const Vector g0 = prob.ineq_constraints(prob.x0);
  if (!g0.allFinite()) {
    throw NumericalFailure("non-finite inequality values at x0");
  }
  IterateV v;
  v.x = prob.x0;
  v.y = Vector::Zero(prob.m);
  v.w = Vector::Ones(prob.p);
  v.s = g0.cwiseMax(1.0);
  v.z = Vector::Ones(prob.p);
  return v;
}

namespace {

ArcDerivatives directions(const ProblemDef& prob, const IterateV& v,
                          const KktResidual& res, double sigma,
                          const SolverConfig& cfg) {
  const KktFactorization fact = factorize(jacobian(prob, v), cfg.policy);
  ArcDerivatives d;
  d.vdot = solve_first_order(fact, res, sigma);
  switch (cfg.method) {
    case Method::kArc: {
      const SecondOrderRhs rhs =
          contract_third_order(prob, v, d.vdot, cfg.fd_eps, cfg.policy);
      d.vddot = solve_second_order(fact, rhs);
      d.mode = SecondOrderMode::kFull;
      break;
    }
    case Method::kArcSimplified:
      d.vddot = solve_simplified_second_order(fact, d.vdot.z, d.vdot.s);
      d.mode = SecondOrderMode::kSimplified;
      break;
    case Method::kLine:
      d.vddot = IterateV::zeros(prob.n, prob.m, prob.p);
      d.mode = SecondOrderMode::kSimplified;
      break;
  }
  return d;
}

SolveReport run(const ProblemDef& prob, const SolverConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  SolveReport report;
  IterateV v = initialize(prob, cfg.init);
  KktResidual res = residual(prob, v);
  const ReferenceData ref = make_reference(res);

  int k = 0;
  for (;; ++k) {
    if (res.merit <= cfg.tol) {
      report.status = SolveStatus::kConverged;
      break;
    }
    if (k >= cfg.max_iter) {
      report.status = SolveStatus::kIterationLimit;
      break;
    }

    StepParams params = cfg.step;
    params.sigma = centering_sigma(res.merit, res.mu, prob.p);
    ArcDerivatives d;
    StepOutcome step;
    try {
      d = directions(prob, v, res, params.sigma, cfg);
      step = select_step(prob, v, d, res, ref, params);
    } catch (const SingularKkt& e) {
      report.reason = e.what();
    } catch (const StepFailure& e) {
      report.reason = e.what();
    } catch (const NumericalFailure& e) {
      report.reason = e.what();
    }
    if (!report.reason.empty()) {
      report.status = SolveStatus::kUnattained;
      report.failed_iteration = k;
      break;
    }

    if (cfg.observer) {
      cfg.observer({k, &v, &res, &d, &step, params.sigma, params.gamma});
    }
    report.trace.push_back({k, res.merit, res.mu, step.alpha,
                            step.alpha_tilde, step.hat_active, params.sigma,
                            step.backtracks_used});
    v = std::move(step.trial);
    res = std::move(step.trial_residual);
  }

  report.iterations = k;
  report.objective = prob.objective(v.x);
  report.merit_final = res.merit;
  report.final_iterate = std::move(v);
  report.wall_time =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace

SolveReport solve_arc(const ProblemDef& prob, const SolverConfig& cfg) {
  if (cfg.method == Method::kLine) {
    throw InvalidArguments("solve_arc needs method arc or arc-simplified");
  }
  return run(prob, cfg);
}

SolveReport solve_line(const ProblemDef& prob, const SolverConfig& cfg) {
  if (cfg.method != Method::kLine) {
    throw InvalidArguments("solve_line needs method line");
  }
  return run(prob, cfg);
}

SolveReport solve(const ProblemDef& prob, const SolverConfig& cfg) {
  return cfg.method == Method::kLine ? solve_line(prob, cfg)
                                     : solve_arc(prob, cfg);
}

}  // namespace arcipm
