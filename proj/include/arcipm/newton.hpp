#pragma once

#include <vector>

#include "arcipm/kernels.hpp"
#include "arcipm/kkt.hpp"

namespace arcipm {

/// Pivots smaller than this times the largest |entry| of J are singular.
inline constexpr double kSingularPivotRatio = 1e-12;
/// Maximum accepted ||J u - rhs|| / max(1, ||rhs||) for every solve.
inline constexpr double kLinearResidualTol = 1e-8;

/// Reusable LU factorization of the dense KKT matrix. Immutable once built;
/// concurrent solves against one instance are safe.
class KktFactorization {
 public:
  /// Factorizes J. Throws SingularKkt when a pivot is below threshold.
  static KktFactorization factorize(const KktJacobian& jac,
                                    ExecPolicy policy = ExecPolicy::kParallel);

  /// Solves J u = rhs and verifies the linear residual; throws
  /// NumericalFailure when it exceeds kLinearResidualTol.
  Vector solve(const Vector& rhs) const;

  /// Reciprocal 1-norm condition estimate (Hager's estimator).
  double cond_estimate() const { return rcond_; }
  const BlockLayout& layout() const { return layout_; }
  const Matrix& original() const { return original_; }
  const Matrix& packed_lu() const { return lu_; }
  const std::vector<int>& permutation() const { return perm_; }

 private:
  KktFactorization() = default;

  Matrix original_;
  Matrix lu_;
  std::vector<int> perm_;
  BlockLayout layout_;
  double rcond_ = 0.0;
};

inline KktFactorization factorize(const KktJacobian& jac,
                                  ExecPolicy policy = ExecPolicy::kParallel) {
  return KktFactorization::factorize(jac, policy);
}

enum class SecondOrderMode { kFull, kSimplified };

/// First and second derivatives of the ellipse through the current iterate.
struct ArcDerivatives {
  IterateV vdot;
  IterateV vddot;
  SecondOrderMode mode = SecondOrderMode::kFull;
};

/// Solves F'(v) vdot = F(v) - sigma mu e_bar, where e_bar is one on the
/// complementarity block and zero elsewhere.
IterateV solve_first_order(const KktFactorization& fact,
                           const KktResidual& res, double sigma);

IterateV solve_second_order(const KktFactorization& fact,
                            const SecondOrderRhs& rhs);

/// Second-order solve with every curvature term dropped: the right-hand side
/// is (0, 0, 0, 0, -2 D(zdot) sdot).
IterateV solve_simplified_second_order(const KktFactorization& fact,
                                       const Vector& zdot, const Vector& sdot);

}  // namespace arcipm
