#include "arcipm/newton.hpp"

#include <cmath>
#include <sstream>

#include "arcipm/errors.hpp"

namespace arcipm {
namespace {

/// Hager's estimate of ||A^{-1}||_1 from the packed factors.
double inverse_one_norm(const Matrix& lu, const std::vector<int>& perm) {
  const Eigen::Index n = lu.rows();
  if (n == 0) return 0.0;
  Vector x = Vector::Constant(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const Vector y = kernels::lu_solve(lu, perm, x);
    estimate = y.lpNorm<1>();
    const Vector xi = y.unaryExpr([](double t) { return t >= 0.0 ? 1.0 : -1.0; });
    const Vector z = kernels::lu_solve_transpose(lu, perm, xi);
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= z.dot(x)) break;
    x.setZero();
    x(j) = 1.0;
  }
  return estimate;
}

}  // namespace

KktFactorization KktFactorization::factorize(const KktJacobian& jac,
                                             ExecPolicy policy) {
  KktFactorization fact;
  fact.original_ = jac.matrix;
  fact.lu_ = jac.matrix;
  fact.layout_ = jac.layout;

  const double scale =
      jac.matrix.size() == 0 ? 0.0 : jac.matrix.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) {
    throw NumericalFailure("non-finite KKT matrix");
  }
  const auto status = kernels::lu_factor(fact.lu_, fact.perm_,
                                         kSingularPivotRatio * scale, policy);
  if (status.singular_column >= 0) {
    const double cond =
        status.min_pivot > 0.0 ? scale / status.min_pivot : HUGE_VAL;
    std::ostringstream msg;
    msg << "singular KKT matrix: pivot " << status.min_pivot << " in column "
        << status.singular_column << " (condition estimate " << cond << ")";
    throw SingularKkt(msg.str(), cond);
  }

  const double a_norm = jac.matrix.cwiseAbs().colwise().sum().maxCoeff();
  const double inv_norm = inverse_one_norm(fact.lu_, fact.perm_);
  fact.rcond_ = a_norm > 0.0 && inv_norm > 0.0 ? 1.0 / (a_norm * inv_norm)
                                                : 0.0;
  return fact;
}

Vector KktFactorization::solve(const Vector& rhs) const {
  if (rhs.size() != lu_.rows()) {
    throw InvalidArguments("right-hand side has the wrong length");
  }
  Vector u = kernels::lu_solve(lu_, perm_, rhs);
  const double rel =
      (original_ * u - rhs).norm() / std::max(1.0, rhs.norm());
  if (!u.allFinite() || !(rel < kLinearResidualTol)) {
    std::ostringstream msg;
    msg << "inaccurate KKT solve: relative residual " << rel;
    throw NumericalFailure(msg.str());
  }
  return u;
}

IterateV solve_first_order(const KktFactorization& fact,
                           const KktResidual& res, double sigma) {
  const BlockLayout& lay = fact.layout();
  Vector rhs = res.stacked();
  rhs.segment(lay.z(), lay.p).array() -= sigma * res.mu;
  return IterateV::from_stacked(fact.solve(rhs), lay.n, lay.m, lay.p);
}

IterateV solve_second_order(const KktFactorization& fact,
                            const SecondOrderRhs& rhs) {
  const BlockLayout& lay = fact.layout();
  return IterateV::from_stacked(fact.solve(rhs.stacked()), lay.n, lay.m,
                                lay.p);
}

IterateV solve_simplified_second_order(const KktFactorization& fact,
                                       const Vector& zdot,
                                       const Vector& sdot) {
  const BlockLayout& lay = fact.layout();
  Vector rhs = Vector::Zero(lay.size());
  rhs.segment(lay.z(), lay.p) = -2.0 * zdot.cwiseProduct(sdot);
  return IterateV::from_stacked(fact.solve(rhs), lay.n, lay.m, lay.p);
}

}  // namespace arcipm
