#include "arcipm/nlp_model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "arcipm/errors.hpp"

namespace arcipm {

std::string_view to_string(ProblemTag tag) {
  return tag == ProblemTag::kQcqp ? "QCQP" : "OTHER";
}

ProblemDef make_problem(std::string name, ProblemTag tag, Vector x0,
                        ScalarFunction objective,
                        std::vector<ScalarFunction> eqs,
                        std::vector<ScalarFunction> ineqs,
                        std::optional<double> known_objective) {
  const int n = static_cast<int>(x0.size());
  const int m = static_cast<int>(eqs.size());
  const int p = static_cast<int>(ineqs.size());
  if (n == 0) {
    throw InvalidArguments(name + ": empty starting point");
  }
  if (p < 1) {
    throw InvalidArguments(name + ": at least one inequality is required");
  }
  if (m > n) {
    throw InvalidArguments(name + ": more equality constraints than variables");
  }

  // Shared ownership keeps the callables valid for every copy of ProblemDef.
  auto f = std::make_shared<const ScalarFunction>(std::move(objective));
  auto h = std::make_shared<const std::vector<ScalarFunction>>(std::move(eqs));
  auto g =
      std::make_shared<const std::vector<ScalarFunction>>(std::move(ineqs));

  ProblemDef prob;
  prob.name = std::move(name);
  prob.n = n;
  prob.m = m;
  prob.p = p;
  prob.tag = tag;
  prob.x0 = std::move(x0);
  prob.known_objective = known_objective;

  prob.objective = [f](const Vector& x) { return f->value(x); };
  prob.obj_gradient = [f](const Vector& x) { return f->gradient(x); };
  prob.obj_hessian = [f](const Vector& x) { return f->hessian(x); };

  auto values = [](std::shared_ptr<const std::vector<ScalarFunction>> fs) {
    return [fs](const Vector& x) {
      Vector out(static_cast<Eigen::Index>(fs->size()));
      for (std::size_t j = 0; j < fs->size(); ++j) {
        out(static_cast<Eigen::Index>(j)) = (*fs)[j].value(x);
      }
      return out;
    };
  };
  auto jacobian = [n](std::shared_ptr<const std::vector<ScalarFunction>> fs) {
    return [fs, n](const Vector& x) {
      Matrix out(n, static_cast<Eigen::Index>(fs->size()));
      for (std::size_t j = 0; j < fs->size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = (*fs)[j].gradient(x);
      }
      return out;
    };
  };
  auto hessian = [](std::shared_ptr<const std::vector<ScalarFunction>> fs) {
    return [fs](const Vector& x, int j) {
      return (*fs)[static_cast<std::size_t>(j)].hessian(x);
    };
  };

  prob.eq_constraints = values(h);
  prob.ineq_constraints = values(g);
  prob.eq_jacobian = jacobian(h);
  prob.ineq_jacobian = jacobian(g);
  prob.eq_hessian = hessian(h);
  prob.ineq_hessian = hessian(g);
  return prob;
}

DirectionalHessianDifference::DirectionalHessianDifference(
    HessianFunction hessian, Vector x, double eps_hat)
    : hessian_{std::move(hessian)}, x_{std::move(x)}, eps_hat_{eps_hat} {
  if (!(eps_hat_ > 0.0)) {
    throw InvalidArguments("eps_hat must be positive");
  }
  base_ = hessian_(x_);
  if (!base_.allFinite()) {
    throw NumericalFailure("non-finite Hessian at base point", -1);
  }
}

Matrix DirectionalHessianDifference::operator()(int i) const {
  Vector shifted = x_;
  shifted(i) += eps_hat_;
  Matrix diff = (hessian_(shifted) - base_) / eps_hat_;
  if (!diff.allFinite()) {
    throw NumericalFailure(
        "non-finite Hessian difference along coordinate " + std::to_string(i),
        i);
  }
  return diff;
}

DirectionalHessianDifference fd_hessian_directional(HessianFunction l_hessian,
                                                    const Vector& x,
                                                    double eps_hat) {
  return DirectionalHessianDifference(std::move(l_hessian), x, eps_hat);
}

bool ValidationReport::pass() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const LevelCheck& c) { return c.pass; });
}

std::vector<std::string> ValidationReport::failed_levels() const {
  std::vector<std::string> out;
  for (const auto& c : levels) {
    if (!c.pass) {
      out.push_back(c.level);
    }
  }
  return out;
}

namespace {

double fd_step(double xi) { return 1e-6 * std::max(1.0, std::abs(xi)); }

/// Central-difference Jacobian of a vector field; column i is d F / d x_i.
template <typename Field>
Matrix central_jacobian(const Field& field, const Vector& x) {
  const Vector f0 = field(x);
  Matrix jac(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double step = fd_step(x(i));
    Vector xp = x;
    Vector xm = x;
    xp(i) += step;
    xm(i) -= step;
    jac.col(i) = (field(xp) - field(xm)) / (2.0 * step);
  }
  return jac;
}

struct LevelAccumulator {
  std::string level;
  double tol;
  double max_rel = 0.0;
  bool pass = true;

  void add(const Matrix& analytic, const Matrix& fd) {
    const double err = (analytic - fd).cwiseAbs().maxCoeff();
    const double scale = fd.size() == 0 ? 0.0 : fd.cwiseAbs().maxCoeff();
    const double denom = std::max(scale, kValidationAbsFloor / tol);
    const double rel = std::isfinite(err) ? err / denom : HUGE_VAL;
    max_rel = std::max(max_rel, rel);
    if (!(err <= std::max(tol * scale, kValidationAbsFloor))) {
      pass = false;
    }
  }

  LevelCheck finish() const { return {level, max_rel, pass}; }
};

}  // namespace

ValidationReport validate_problem(const ProblemDef& prob, double tol) {
  ValidationReport report;
  report.problem = prob.name;

  std::vector<Vector> points;
  points.push_back(prob.x0);
  for (double shift : {0.137, -0.291}) {
    Vector x = prob.x0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      // Distinct per-coordinate offsets avoid symmetric cancellation.
      x(i) += shift * (1.0 + 0.1 * static_cast<double>(i % 7));
    }
    points.push_back(x);
  }

  LevelAccumulator grad{"gradient", tol};
  LevelAccumulator hess{"obj_hessian", tol};
  LevelAccumulator eq_jac{"eq_jacobian", tol};
  LevelAccumulator ineq_jac{"ineq_jacobian", tol};
  LevelAccumulator eq_hess{"eq_hessian", tol};
  LevelAccumulator ineq_hess{"ineq_hessian", tol};

  for (const Vector& x : points) {
    auto f_as_vec = [&](const Vector& xx) {
      Vector out(1);
      out(0) = prob.objective(xx);
      return out;
    };
    grad.add(prob.obj_gradient(x),
             central_jacobian(f_as_vec, x).transpose());
    hess.add(prob.obj_hessian(x), central_jacobian(prob.obj_gradient, x));

    if (prob.m > 0) {
      eq_jac.add(prob.eq_jacobian(x),
                 central_jacobian(prob.eq_constraints, x).transpose());
    }
    ineq_jac.add(prob.ineq_jacobian(x),
                 central_jacobian(prob.ineq_constraints, x).transpose());

    for (int j = 0; j < prob.m; ++j) {
      auto col = [&](const Vector& xx) -> Vector {
        return prob.eq_jacobian(xx).col(j);
      };
      eq_hess.add(prob.eq_hessian(x, j), central_jacobian(col, x));
    }
    for (int i = 0; i < prob.p; ++i) {
      auto col = [&](const Vector& xx) -> Vector {
        return prob.ineq_jacobian(xx).col(i);
      };
      ineq_hess.add(prob.ineq_hessian(x, i), central_jacobian(col, x));
    }
  }

  report.levels = {grad.finish(),   hess.finish(),    eq_jac.finish(),
                   ineq_jac.finish(), eq_hess.finish(), ineq_hess.finish()};
  return report;
}

}  // namespace arcipm
