#pragma once

#include "arcipm/kernels.hpp"
#include "arcipm/nlp_model.hpp"

namespace arcipm {

/// Primal-dual iterate v = (x, y, w, s, z): primal variables, equality
/// multipliers, inequality multipliers, slacks, and complementarity
/// multipliers. Solvers keep w, s, z > 0 and w == z.
struct IterateV {
  Vector x;
  Vector y;
  Vector w;
  Vector s;
  Vector z;

  int n() const { return static_cast<int>(x.size()); }
  int m() const { return static_cast<int>(y.size()); }
  int p() const { return static_cast<int>(s.size()); }
  int size() const { return n() + m() + 3 * p(); }

  /// Concatenation (x, y, w, s, z).
  Vector stacked() const;
  static IterateV from_stacked(const Vector& v, int n, int m, int p);
  static IterateV zeros(int n, int m, int p);
};

/// F(v) split into its five blocks, plus phi = ||F||^2 and mu = z's / p.
struct KktResidual {
  Vector grad_lag_x;
  Vector eq_res;
  Vector ineq_res;
  Vector dual_res;
  Vector comp_res;
  double merit = 0.0;
  double mu = 0.0;

  Vector stacked() const;
};

/// Offsets of the five variable blocks in the stacked (n + m + 3p) vector.
struct BlockLayout {
  int n = 0;
  int m = 0;
  int p = 0;

  int x() const { return 0; }
  int y() const { return n; }
  int w() const { return n + m; }
  int s() const { return n + m + p; }
  int z() const { return n + m + 2 * p; }
  int size() const { return n + m + 3 * p; }
};

/// Dense KKT Jacobian F'(v):
///
///   [ H_L    grad h  -grad g   0     0   ]
///   [ grad h'  0       0       0     0   ]
///   [ grad g'  0       0      -I     0   ]
///   [ 0        0       I       0    -I   ]
///   [ 0        0       0      D(z)  D(s) ]
struct KktJacobian {
  Matrix matrix;
  BlockLayout layout;
};

/// grad f(x) + grad h(x) y - grad g(x) w.
Vector lagrangian_grad_x(const ProblemDef& prob, const IterateV& v);

/// grad^2 f(x) + sum_j y_j grad^2 h_j(x) - sum_i w_i grad^2 g_i(x).
Matrix lagrangian_hessian(const ProblemDef& prob, const Vector& x,
                          const Vector& y, const Vector& w);

KktResidual residual(const ProblemDef& prob, const IterateV& v);

KktJacobian jacobian(const ProblemDef& prob, const IterateV& v);

/// Right-hand side of the second-order system, block by block.
struct SecondOrderRhs {
  Vector x_block;
  Vector eq_block;
  Vector ineq_block;
  Vector dual_block;
  Vector comp_block;

  Vector stacked() const;
};

/**
 * Builds the second-order right-hand side from the first derivative vdot:
 *
 *   -(grad^3 L) xdot xdot - 2 (grad^2 h) ydot xdot + 2 (grad^2 g) zdot xdot
 *   -(grad^2 h)' xdot xdot
 *   -(grad^2 g)' xdot xdot
 *   0
 *   -2 D(zdot) sdot
 *
 * The third-order term is never materialized; it is contracted from n + 1
 * Hessian evaluations by forward differences with step eps_hat.
 */
SecondOrderRhs contract_third_order(const ProblemDef& prob, const IterateV& v,
                                    const IterateV& vdot, double eps_hat,
                                    ExecPolicy policy = ExecPolicy::kParallel);

}  // namespace arcipm
