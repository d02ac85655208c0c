#include "arcipm/kkt.hpp"

#include <cmath>
#include <string>

#include "arcipm/errors.hpp"

namespace arcipm {
namespace {

Vector concat(std::initializer_list<const Vector*> parts) {
  Eigen::Index total = 0;
  for (const Vector* part : parts) {
    total += part->size();
  }
  Vector out(total);
  Eigen::Index offset = 0;
  for (const Vector* part : parts) {
    out.segment(offset, part->size()) = *part;
    offset += part->size();
  }
  return out;
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw NumericalFailure(std::string("non-finite ") + what);
  }
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw NumericalFailure(std::string("non-finite ") + what);
  }
}

}  // namespace

Vector IterateV::stacked() const { return concat({&x, &y, &w, &s, &z}); }

IterateV IterateV::from_stacked(const Vector& v, int n, int m, int p) {
  if (v.size() != n + m + 3 * p) {
    throw InvalidArguments("stacked vector has the wrong length");
  }
  IterateV out;
  out.x = v.segment(0, n);
  out.y = v.segment(n, m);
  out.w = v.segment(n + m, p);
  out.s = v.segment(n + m + p, p);
  out.z = v.segment(n + m + 2 * p, p);
  return out;
}

IterateV IterateV::zeros(int n, int m, int p) {
  return {Vector::Zero(n), Vector::Zero(m), Vector::Zero(p), Vector::Zero(p),
          Vector::Zero(p)};
}

Vector KktResidual::stacked() const {
  return concat({&grad_lag_x, &eq_res, &ineq_res, &dual_res, &comp_res});
}

Vector SecondOrderRhs::stacked() const {
  return concat({&x_block, &eq_block, &ineq_block, &dual_block, &comp_block});
}

Vector lagrangian_grad_x(const ProblemDef& prob, const IterateV& v) {
  Vector grad = prob.obj_gradient(v.x) - prob.ineq_jacobian(v.x) * v.w;
  if (prob.m > 0) {
    grad += prob.eq_jacobian(v.x) * v.y;
  }
  return grad;
}

Matrix lagrangian_hessian(const ProblemDef& prob, const Vector& x,
                          const Vector& y, const Vector& w) {
  Matrix hess = prob.obj_hessian(x);
  for (int j = 0; j < prob.m; ++j) {
    hess += y(j) * prob.eq_hessian(x, j);
  }
  for (int i = 0; i < prob.p; ++i) {
    hess -= w(i) * prob.ineq_hessian(x, i);
  }
  return hess;
}

KktResidual residual(const ProblemDef& prob, const IterateV& v) {
  KktResidual res;
  res.grad_lag_x = lagrangian_grad_x(prob, v);
  res.eq_res = prob.m > 0 ? prob.eq_constraints(v.x) : Vector(Vector::Zero(0));
  res.ineq_res = prob.ineq_constraints(v.x) - v.s;
  res.dual_res = v.w - v.z;
  res.comp_res = v.z.cwiseProduct(v.s);
  res.merit = res.grad_lag_x.squaredNorm() + res.eq_res.squaredNorm() +
              res.ineq_res.squaredNorm() + res.dual_res.squaredNorm() +
              res.comp_res.squaredNorm();
  res.mu = v.z.dot(v.s) / static_cast<double>(prob.p);
  if (!std::isfinite(res.merit)) {
    throw NumericalFailure("non-finite KKT residual");
  }
  return res;
}

KktJacobian jacobian(const ProblemDef& prob, const IterateV& v) {
  const BlockLayout lay{prob.n, prob.m, prob.p};
  const int n = lay.n;
  const int m = lay.m;
  const int p = lay.p;

  Matrix jac = Matrix::Zero(lay.size(), lay.size());
  const Matrix hess = lagrangian_hessian(prob, v.x, v.y, v.w);
  const Matrix ag = prob.ineq_jacobian(v.x);
  require_finite(hess, "Lagrangian Hessian");
  require_finite(ag, "inequality Jacobian");

  jac.block(lay.x(), lay.x(), n, n) = hess;
  if (m > 0) {
    const Matrix ah = prob.eq_jacobian(v.x);
    require_finite(ah, "equality Jacobian");
    jac.block(lay.x(), lay.y(), n, m) = ah;
    jac.block(lay.y(), lay.x(), m, n) = ah.transpose();
  }
  jac.block(lay.x(), lay.w(), n, p) = -ag;

  // Rows of g(x) - s.
  const int r_ineq = n + m;
  jac.block(r_ineq, lay.x(), p, n) = ag.transpose();
  jac.block(r_ineq, lay.s(), p, p) = -Matrix::Identity(p, p);

  // Rows of w - z.
  const int r_dual = n + m + p;
  jac.block(r_dual, lay.w(), p, p) = Matrix::Identity(p, p);
  jac.block(r_dual, lay.z(), p, p) = -Matrix::Identity(p, p);

  // Rows of D(z) s.
  const int r_comp = n + m + 2 * p;
  jac.block(r_comp, lay.s(), p, p) = v.z.asDiagonal();
  jac.block(r_comp, lay.z(), p, p) = v.s.asDiagonal();

  return {std::move(jac), lay};
}

SecondOrderRhs contract_third_order(const ProblemDef& prob, const IterateV& v,
                                    const IterateV& vdot, double eps_hat,
                                    ExecPolicy policy) {
  const Vector& xd = vdot.x;
  HessianFunction l_hess = [&prob, y = v.y, w = v.w](const Vector& x) {
    return lagrangian_hessian(prob, x, y, w);
  };

  SecondOrderRhs rhs;
  rhs.x_block =
      -kernels::third_order_contraction(l_hess, v.x, xd, eps_hat, policy);
  rhs.eq_block = Vector::Zero(prob.m);
  rhs.ineq_block = Vector::Zero(prob.p);
  for (int j = 0; j < prob.m; ++j) {
    const Matrix hj = prob.eq_hessian(v.x, j);
    const Vector hx = hj * xd;
    rhs.x_block -= 2.0 * vdot.y(j) * hx;
    rhs.eq_block(j) = -xd.dot(hx);
  }
  for (int i = 0; i < prob.p; ++i) {
    const Matrix gi = prob.ineq_hessian(v.x, i);
    const Vector gx = gi * xd;
    rhs.x_block += 2.0 * vdot.z(i) * gx;
    rhs.ineq_block(i) = -xd.dot(gx);
  }
  rhs.dual_block = Vector::Zero(prob.p);
  rhs.comp_block = -2.0 * vdot.z.cwiseProduct(vdot.s);
  require_finite(rhs.stacked(), "second-order right-hand side");
  return rhs;
}

}  // namespace arcipm
