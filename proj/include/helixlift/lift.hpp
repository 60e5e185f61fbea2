#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "helixlift/helix.hpp"

namespace helixlift {

/// Maximum |speed - 1| accepted as unit speed.
inline constexpr double kUnitSpeedTolerance = 1e-6;

/// Maximum |spec.theta - helix angle| before the lift is refused.
inline constexpr double kThetaMatchTolerance = 1e-6;

inline bool is_unit_speed(const ParamCurve& curve, std::size_t grid_size) {
  for (double t : uniform_grid(curve.domain(), grid_size)) {
    if (std::fabs(norm(curve.eval(t, 1)) - 1.0) > kUnitSpeedTolerance) return false;
  }
  return true;
}

inline bool is_degenerate_angle(double theta) {
  return theta == 0.0 || theta == std::numbers::pi / 2;
}

/// Effective axis vector for `spec` over the base helix `alpha`.
inline Vec3 resolve_lift_axis(const ParamCurve& alpha, const LiftSpec& spec, std::size_t grid_size,
                              const Tolerances& tol = {}) {
  if (spec.axis_mode == AxisMode::explicit_axis) {
    if (!spec.axis) fail(ErrorKind::InvalidField, "explicit axis mode needs an axis vector");
    return *spec.axis;
  }
  const HelixAxis h = helix_axis(alpha, grid_size, tol);
  if (std::fabs(spec.theta - h.theta) > kThetaMatchTolerance) {
    fail(ErrorKind::ThetaMismatch, "theta " + std::to_string(spec.theta) + " differs from the helix angle " +
                                       std::to_string(h.theta));
  }
  return spec.axis_mode == AxisMode::paper_printed ? 2.0 * h.axis : h.axis;
}

namespace detail {

inline ParamCurve build_lift(const ParamCurve& alpha, LiftSpec spec, std::size_t grid_size, const Tolerances& tol,
                             bool require_unit_speed) {
  if (!(spec.theta >= 0.0 && spec.theta <= std::numbers::pi / 2)) {
    fail(ErrorKind::InvalidArgument, "lift angle must lie in [0, pi/2]");
  }
  if (require_unit_speed && !is_unit_speed(alpha, grid_size)) {
    fail(ErrorKind::NotUnitSpeed, "lift base must be parameterized by arc length");
  }
  const Vec3 axis = resolve_lift_axis(alpha, spec, grid_size, tol);
  spec.axis = axis;
  return ParamCurve::lifted(alpha, spec, axis);
}

}  // namespace detail

/// offset + sin(theta) alpha(s) + a (s - s0) cos(theta) over a unit-speed
/// general helix alpha.
inline ParamCurve lift_curve(const ParamCurve& alpha, const LiftSpec& spec, std::size_t grid_size = 256,
                             const Tolerances& tol = {}) {
  return detail::build_lift(alpha, spec, grid_size, tol, true);
}

/// Same transformation applied to alpha's own parameter, skipping the unit-speed
/// precondition. Only meaningful for reproducing worked examples stated in a
/// non-arc-length parameter.
inline ParamCurve lift_curve_literal(const ParamCurve& alpha, const LiftSpec& spec, std::size_t grid_size = 256,
                                     const Tolerances& tol = {}) {
  return detail::build_lift(alpha, spec, grid_size, tol, false);
}

struct LiftResult {
  ParamCurve base;  ///< unit-speed base actually lifted
  ParamCurve lifted;
  bool reparameterized = false;
};

/// Lift with automatic arc-length reparameterization of a non-unit-speed base.
/// s0 is interpreted in the arc-length parameter of the result's base.
inline LiftResult lift_helix(const ParamCurve& alpha, const LiftSpec& spec, std::size_t grid_size = 256,
                             const Tolerances& tol = {}, std::size_t arclength_cells = 256) {
  if (is_unit_speed(alpha, grid_size)) return {alpha, lift_curve(alpha, spec, grid_size, tol), false};
  ParamCurve unit = reparam_by_arclength(alpha, arclength_cells, tol);
  ParamCurve lifted = lift_curve(unit, spec, grid_size, tol);
  return {std::move(unit), std::move(lifted), true};
}

/// Closed-form lifted-frame coefficients in the base frame {T, N, B}, evaluated
/// exactly as printed:
///   Tbar = tbar_T T + tbar_B B,  Bbar = bbar_T T + bbar_B B,  Nbar = c N.
struct ClosedFormFrame {
  double lambda = 0.0;
  double mu = 0.0;
  double c = 0.0;
  double tbar_T_coeff = 0.0;
  double tbar_B_coeff = 0.0;
  double bbar_T_coeff = 0.0;
  double bbar_B_coeff = 0.0;
};

inline ClosedFormFrame closed_form_lift_frame(double kappa, double tau, double theta) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double tbar_den = std::sqrt(1.0 + ct * std::sin(2.0 * theta));
  ClosedFormFrame f;
  f.lambda = ct * st * st + ct * ct * ct * st;
  f.mu = (st + ct * ct) * kappa - (ct * st * st + ct * ct * ct * st) * tau;
  const double lm2 = f.lambda * f.lambda + f.mu * f.mu;
  if (!(lm2 > 1e-12)) fail(ErrorKind::DegenerateDenominator, "lambda^2 + mu^2 vanishes");
  const double lm = std::sqrt(lm2);
  f.tbar_T_coeff = (st + ct * ct) / tbar_den;
  f.tbar_B_coeff = ct * st / tbar_den;
  f.bbar_T_coeff = f.lambda / lm;
  f.bbar_B_coeff = f.mu / lm;
  f.c = f.bbar_B_coeff * f.tbar_T_coeff - f.bbar_T_coeff * f.tbar_B_coeff;
  return f;
}

inline double c_factor(double kappa, double tau, double theta) { return closed_form_lift_frame(kappa, tau, theta).c; }

}  // namespace helixlift
