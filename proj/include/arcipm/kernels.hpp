#pragma once

#include <vector>

#include "arcipm/nlp_model.hpp"

namespace arcipm {

/// Selects between the serial reference kernels and their OpenMP versions.
/// Both produce bitwise-identical results; the serial path is kept as the
/// reference the parallel path is tested against.
enum class ExecPolicy { kSerial, kParallel };

namespace kernels {

/// In-place LU factorization with partial pivoting, PA = LU. L is unit lower
/// triangular and stored below the diagonal of `a`; U on and above it.
/// `perm[k]` is the row of the original matrix that ended up in row k.
struct LuStatus {
  /// First column whose pivot fell below `pivot_floor`, or -1.
  int singular_column = -1;
  double min_pivot = 0.0;
};

LuStatus lu_factor_serial(Matrix& a, std::vector<int>& perm,
                          double pivot_floor);
LuStatus lu_factor_parallel(Matrix& a, std::vector<int>& perm,
                            double pivot_floor);

inline LuStatus lu_factor(Matrix& a, std::vector<int>& perm,
                          double pivot_floor, ExecPolicy policy) {
  return policy == ExecPolicy::kSerial
             ? lu_factor_serial(a, perm, pivot_floor)
             : lu_factor_parallel(a, perm, pivot_floor);
}

/// Solves A x = b given the packed factors of PA = LU.
Vector lu_solve(const Matrix& lu, const std::vector<int>& perm,
                const Vector& b);

/// Solves A^T x = b given the packed factors of PA = LU.
Vector lu_solve_transpose(const Matrix& lu, const std::vector<int>& perm,
                          const Vector& b);

/**
 * Third-order contraction (grad^3 L) xdot xdot = sum_i xdot_i D_i xdot,
 * where D_i is the forward-difference derivative of the Hessian field along
 * coordinate i. Costs n + 1 Hessian evaluations. The per-coordinate terms
 * are accumulated in index order in both variants.
 */
Vector third_order_contraction_serial(const HessianFunction& hessian,
                                      const Vector& x, const Vector& xdot,
                                      double eps_hat);
Vector third_order_contraction_parallel(const HessianFunction& hessian,
                                        const Vector& x, const Vector& xdot,
                                        double eps_hat);

inline Vector third_order_contraction(const HessianFunction& hessian,
                                      const Vector& x, const Vector& xdot,
                                      double eps_hat, ExecPolicy policy) {
  return policy == ExecPolicy::kSerial
             ? third_order_contraction_serial(hessian, x, xdot, eps_hat)
             : third_order_contraction_parallel(hessian, x, xdot, eps_hat);
}

}  // namespace kernels
}  // namespace arcipm
