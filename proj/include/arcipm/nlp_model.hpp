#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace arcipm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class ProblemTag { kQcqp, kOther };

std::string_view to_string(ProblemTag tag);

/// A scalar function of x together with its first and second derivatives.
/// Used as the building block for objectives and individual constraints.
struct ScalarFunction {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<Matrix(const Vector&)> hessian;
};

/**
 * A nonlinear program
 *
 *   min f(x)  s.t.  h(x) = 0,  g(x) >= 0
 *
 * with analytic derivative oracles. Jacobians are stored column-wise:
 * eq_jacobian(x) is n x m with column j equal to the gradient of h_j, and
 * likewise for ineq_jacobian.
 *
 * Instances are immutable after construction and every callable is
 * reentrant, so one ProblemDef may be shared by concurrent solves.
 */
struct ProblemDef {
  std::string name;
  int n = 0;
  int m = 0;
  int p = 0;
  ProblemTag tag = ProblemTag::kOther;

  std::function<double(const Vector&)> objective;
  std::function<Vector(const Vector&)> eq_constraints;
  std::function<Vector(const Vector&)> ineq_constraints;
  std::function<Vector(const Vector&)> obj_gradient;
  std::function<Matrix(const Vector&)> obj_hessian;
  std::function<Matrix(const Vector&)> eq_jacobian;
  std::function<Matrix(const Vector&)> ineq_jacobian;
  std::function<Matrix(const Vector&, int)> eq_hessian;
  std::function<Matrix(const Vector&, int)> ineq_hessian;

  Vector x0;
  std::optional<double> known_objective;
};

/// Assembles a ProblemDef from per-function pieces. Throws InvalidArguments
/// when p < 1, m > n, or x0 is empty.
ProblemDef make_problem(std::string name, ProblemTag tag, Vector x0,
                        ScalarFunction objective,
                        std::vector<ScalarFunction> eqs,
                        std::vector<ScalarFunction> ineqs,
                        std::optional<double> known_objective = std::nullopt);

using HessianFunction = std::function<Matrix(const Vector&)>;

/**
 * Forward-difference directional derivatives of a Hessian field:
 *
 *   D_i = (H(x + eps e_i) - H(x)) / eps.
 *
 * H(x) is evaluated once on construction; each call evaluates one shifted
 * Hessian. Non-finite values raise NumericalFailure carrying the offending
 * coordinate (-1 for the base point).
 */
class DirectionalHessianDifference {
 public:
  DirectionalHessianDifference(HessianFunction hessian, Vector x,
                               double eps_hat);

  Matrix operator()(int i) const;

  int dimension() const { return static_cast<int>(x_.size()); }
  double eps_hat() const { return eps_hat_; }
  const Matrix& base() const { return base_; }

 private:
  HessianFunction hessian_;
  Vector x_;
  double eps_hat_;
  Matrix base_;
};

inline constexpr double kDefaultFdEps = 1e-4;

DirectionalHessianDifference fd_hessian_directional(
    HessianFunction l_hessian, const Vector& x, double eps_hat = kDefaultFdEps);

struct LevelCheck {
  std::string level;
  double max_rel_error = 0.0;
  bool pass = true;
};

struct ValidationReport {
  std::string problem;
  std::vector<LevelCheck> levels;

  bool pass() const;
  /// Levels that failed, in check order.
  std::vector<std::string> failed_levels() const;
};

inline constexpr double kValidationTol = 1e-5;
inline constexpr double kValidationAbsFloor = 1e-8;

/**
 * Cross-checks every analytic derivative against central differences at x0
 * and two deterministic perturbations of it. Levels: "gradient",
 * "obj_hessian", "eq_jacobian", "ineq_jacobian", "eq_hessian",
 * "ineq_hessian". A level passes when the max-norm error is at most
 * max(tol * |fd|_inf, 1e-8).
 */
ValidationReport validate_problem(const ProblemDef& prob,
                                  double tol = kValidationTol);

}  // namespace arcipm
