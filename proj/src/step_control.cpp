#include "arcipm/step_control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>

#include "arcipm/errors.hpp"

namespace arcipm {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Predicted decrease below this fraction of the current merit, scaled by
/// delta, is treated as stagnation.
constexpr double kStagnationRatio = 1e-6;

Vector along(const Vector& v, const Vector& dot, const Vector& ddot,
             double sin_a, double one_minus_cos) {
  return v - dot * sin_a + ddot * one_minus_cos;
}

/// Fraction-to-boundary holds up to rounding in the ellipse evaluation.
bool keeps_fraction(const Vector& before, const Vector& after,
                    const Vector& dot, const Vector& ddot, double delta) {
  for (Eigen::Index i = 0; i < before.size(); ++i) {
    const double slack = 1e-12 * (std::abs(before(i)) + std::abs(dot(i)) +
                                  std::abs(ddot(i)));
    if (!(after(i) > 0.0) || after(i) < delta * before(i) - slack) {
      return false;
    }
  }
  return true;
}

}  // namespace

void StepParams::validate() const {
  auto fail = [](const char* what) { throw InvalidArguments(what); };
  if (!(delta > 0.0 && delta < 1.0)) fail("delta must lie in (0, 1)");
  if (!(beta > 0.0 && beta <= 0.5)) fail("beta must lie in (0, 1/2]");
  if (!(gamma >= 0.5 && gamma <= 1.0)) fail("gamma must lie in [1/2, 1]");
  if (!(sigma > 0.0 && sigma < 1.0)) fail("sigma must lie in (0, 1)");
  if (!(backtrack_ratio > 0.0 && backtrack_ratio < 1.0)) {
    fail("backtrack_ratio must lie in (0, 1)");
  }
  if (max_backtracks < 0) fail("max_backtracks must be non-negative");
}

ReferenceData make_reference(const KktResidual& res0) {
  return {res0.comp_res.minCoeff(), res0.merit};
}

IterateV ellipse_point(const IterateV& v, const ArcDerivatives& d,
                       double alpha) {
  const double sa = std::sin(alpha);
  const double omc = 1.0 - std::cos(alpha);
  const IterateV& a = d.vdot;
  const IterateV& b = d.vddot;
  return {along(v.x, a.x, b.x, sa, omc), along(v.y, a.y, b.y, sa, omc),
          along(v.w, a.w, b.w, sa, omc), along(v.s, a.s, b.s, sa, omc),
          along(v.z, a.z, b.z, sa, omc)};
}

double component_product_identity(double z, double s, double zdot,
                                  double sdot, double zddot, double sddot,
                                  double sigma, double mu, double alpha) {
  const double sa = std::sin(alpha);
  const double omc = 1.0 - std::cos(alpha);
  return z * s * (1.0 - sa) + sigma * mu * sa -
         (zdot * sddot + zddot * sdot) * sa * omc +
         (zddot * sddot - zdot * sdot) * omc * omc;
}

double component_max_angle(double value, double dot, double ddot,
                           double delta) {
  // With t = tan(a / 2) the condition becomes a t^2 + b t + c >= 0 on
  // t in [0, 1], where c > 0. The first positive root of the quadratic is
  // the largest safe angle; solving for it in this form avoids the
  // cancellation that the arcsine/arccosine expressions suffer when
  // |ddot| >> value.
  const double c = (1.0 - delta) * value;
  const double a = c + 2.0 * ddot;
  const double b = -2.0 * dot;

  double root = HUGE_VAL;
  auto consider = [&root](double r) {
    if (r > 0.0) root = std::min(root, r);
  };
  if (a == 0.0) {
    if (b != 0.0) consider(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      if (q != 0.0) {
        consider(q / a);
        consider(c / q);
      }
    }
  }
  return root >= 1.0 ? kHalfPi : 2.0 * std::atan(root);
}

double alpha_tilde(const IterateV& v, const ArcDerivatives& d, double delta) {
  double angle = kHalfPi;
  for (int i = 0; i < v.p(); ++i) {
    angle = std::min(angle, component_max_angle(v.w(i), d.vdot.w(i),
                                                d.vddot.w(i), delta));
    angle = std::min(angle, component_max_angle(v.s(i), d.vdot.s(i),
                                                d.vddot.s(i), delta));
  }
  return angle;
}

double m_hat(const ReferenceData& ref, const IterateV& trial,
             double merit_trial, double gamma) {
  const double min_comp = trial.z.cwiseProduct(trial.s).minCoeff();
  return min_comp - gamma * ref.min_comp0 * (merit_trial / ref.merit0);
}

double merit_directional(double merit, double sigma, double mu, int p) {
  // F' vdot = F - sigma mu e_bar and F' e_bar = z's = p mu.
  return 2.0 * (merit - sigma * static_cast<double>(p) * mu * mu);
}

bool armijo_decrease(double merit0, double merit_trial, double sigma,
                     double mu, int p, double beta, double alpha,
                     double directional) {
  (void)sigma;
  (void)mu;
  (void)p;
  return merit_trial <= merit0 - beta * std::sin(alpha) * directional;
}

double centering_sigma(double merit, double mu, int p) {
  if (!(mu > 0.0)) {
    return 1e-6;
  }
  const double raw =
      0.125 * std::min(1.0, merit * static_cast<double>(p) / (mu * mu));
  return std::clamp(raw, 1e-6, 0.49);
}

StepOutcome select_step(const ProblemDef& prob, const IterateV& v,
                        const ArcDerivatives& d, const KktResidual& res,
                        const ReferenceData& ref, const StepParams& params) {
  StepOutcome out;
  out.alpha_tilde = alpha_tilde(v, d, params.delta);
  const double directional =
      merit_directional(res.merit, params.sigma, res.mu, prob.p);
  const double decrease_rate = 2.0 * params.beta * (1.0 - params.sigma);

  bool hat_rejected = false;
  bool check_rejected = false;
  double alpha = out.alpha_tilde;
  for (int j = 0; j <= params.max_backtracks; ++j, alpha *= params.backtrack_ratio) {
    const double predicted = params.beta * std::sin(alpha) * directional;
    if (!(predicted > params.delta * kStagnationRatio * res.merit)) {
      std::ostringstream msg;
      msg << "predicted decrease stagnated at alpha = " << alpha;
      throw StepFailure(msg.str());
    }

    IterateV trial = ellipse_point(v, d, alpha);
    for (const auto& [before, after, dot, ddot, label] :
         {std::tuple{&v.w, &trial.w, &d.vdot.w, &d.vddot.w, "w"},
          std::tuple{&v.s, &trial.s, &d.vdot.s, &d.vddot.s, "s"},
          std::tuple{&v.z, &trial.z, &d.vdot.z, &d.vddot.z, "z"}}) {
      if (!keeps_fraction(*before, *after, *dot, *ddot, params.delta)) {
        throw NumericalFailure(std::string("trial ") + label +
                               " violates the fraction-to-boundary rule");
      }
    }

    KktResidual trial_res;
    try {
      trial_res = residual(prob, trial);
    } catch (const NumericalFailure&) {
      check_rejected = true;
      continue;
    }

    const bool hat_ok = m_hat(ref, trial, trial_res.merit, params.gamma) >= 0.0;
    const bool check_ok =
        armijo_decrease(res.merit, trial_res.merit, params.sigma, res.mu,
                        prob.p, params.beta, alpha, directional);
    if (hat_ok && check_ok) {
      const double bound = res.merit * (1.0 - decrease_rate * std::sin(alpha));
      if (trial_res.merit > bound + 1e-12 * res.merit) {
        throw NumericalFailure("sufficient decrease accepted above its bound");
      }
      out.alpha = alpha;
      out.alpha_hat = hat_rejected ? alpha : out.alpha_tilde;
      out.alpha_check = check_rejected ? alpha : out.alpha_tilde;
      out.hat_active = hat_rejected;
      out.check_active = check_rejected;
      out.backtracks_used = j;
      out.merit_new = trial_res.merit;
      out.trial = std::move(trial);
      out.trial_residual = std::move(trial_res);
      return out;
    }
    hat_rejected = hat_rejected || !hat_ok;
    check_rejected = check_rejected || !check_ok;
  }
  std::ostringstream msg;
  msg << "no acceptable step after " << params.max_backtracks
      << " backtracks from alpha_tilde = " << out.alpha_tilde;
  throw StepFailure(msg.str());
}

}  // namespace arcipm
