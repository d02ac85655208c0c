#pragma once

#include "arcipm/kkt.hpp"
#include "arcipm/newton.hpp"

namespace arcipm {

struct StepParams {
  /// Fraction-to-boundary: w(alpha) >= delta w and s(alpha) >= delta s.
  double delta = 1e-3;
  /// Sufficient-decrease constant in (0, 1/2].
  double beta = 0.1;
  /// Neighborhood constant, 1/2 <= gamma_k <= gamma_{k-1} <= 1.
  double gamma = 0.5;
  /// Centering parameter for the current iteration.
  double sigma = 0.125;
  double backtrack_ratio = 0.7;
  int max_backtracks = 60;

  /// Throws InvalidArguments when a field is out of range.
  void validate() const;
};

/// Quantities frozen at the initial iterate v^0 and used by the
/// neighborhood test.
struct ReferenceData {
  /// min(D(z^0) s^0).
  double min_comp0 = 0.0;
  /// phi(v^0).
  double merit0 = 0.0;
};

ReferenceData make_reference(const KktResidual& res0);

struct StepOutcome {
  double alpha = 0.0;
  double alpha_tilde = 0.0;
  /// alpha_tilde when the neighborhood test never rejected a trial,
  /// otherwise the accepted angle. Same convention for alpha_check with the
  /// decrease test, so alpha == min(alpha_tilde, alpha_hat, alpha_check).
  double alpha_hat = 0.0;
  double alpha_check = 0.0;
  IterateV trial;
  KktResidual trial_residual;
  double merit_new = 0.0;
  int backtracks_used = 0;
  bool hat_active = false;
  bool check_active = false;
};

/// Point on the ellipse: v - vdot sin(alpha) + vddot (1 - cos(alpha)).
IterateV ellipse_point(const IterateV& v, const ArcDerivatives& d,
                       double alpha);

/// Closed form of z_i(alpha) s_i(alpha) valid when the last rows of the
/// first- and second-order systems hold.
double component_product_identity(double z, double s, double zdot,
                                  double sdot, double zddot, double sddot,
                                  double sigma, double mu, double alpha);

/// Largest angle in (0, pi/2] such that
///   value - dot sin(a) + ddot (1 - cos(a)) >= delta value
/// for every a in [0, angle]. Requires value > 0.
double component_max_angle(double value, double dot, double ddot,
                           double delta);

/// Minimum of component_max_angle over all w_i and s_i, capped at pi/2.
double alpha_tilde(const IterateV& v, const ArcDerivatives& d, double delta);

/// min(D(z(a)) s(a)) - gamma min(D(z^0) s^0) phi(v(a)) / phi(v^0).
double m_hat(const ReferenceData& ref, const IterateV& trial,
             double merit_trial, double gamma);

/// Rate of decrease -d phi(v(alpha)) / d alpha at alpha = 0, which equals
/// 2 (phi - sigma p mu^2).
double merit_directional(double merit, double sigma, double mu, int p);

/// phi(v(alpha)) <= phi(v) - beta sin(alpha) directional.
bool armijo_decrease(double merit0, double merit_trial, double sigma,
                     double mu, int p, double beta, double alpha,
                     double directional);

/// (1/8) min{1, phi p / mu^2}, clamped into [1e-6, 0.49].
double centering_sigma(double merit, double mu, int p);

/**
 * Picks the step angle. Starts from the analytic fraction-to-boundary angle
 * and backtracks by params.backtrack_ratio until the neighborhood test
 * (m_hat >= 0) and the sufficient-decrease test both hold.
 *
 * Throws StepFailure when backtracking is exhausted or the predicted
 * decrease stagnates.
 */
StepOutcome select_step(const ProblemDef& prob, const IterateV& v,
                        const ArcDerivatives& d, const KktResidual& res,
                        const ReferenceData& ref, const StepParams& params);

}  // namespace arcipm
