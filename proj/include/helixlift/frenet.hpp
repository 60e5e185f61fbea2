#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <string>

#include "helixlift/curve.hpp"

namespace helixlift {

/// Tangent, principal normal and binormal together with curvature, torsion and
/// parametric speed at one parameter value.
struct FrenetFrame {
  Vec3 T, N, B;
  double kappa = 0.0;
  double tau = 0.0;
  double speed = 0.0;
};

struct CurvatureTorsion {
  double kappa = 0.0;
  double tau = 0.0;
};

/// Frame from the first three derivatives of any regular parameterization:
/// T = a'/|a'|, B = a' x a'' / |a' x a''|, N = B x T,
/// kappa = |a' x a''| / |a'|^3, tau = det(a', a'', a''') / |a' x a''|^2.
inline FrenetFrame frame_from_derivatives(const Vec3& d1, const Vec3& d2, const Vec3& d3, const Tolerances& tol) {
  const double speed = norm(d1);
  if (!(speed > tol.speed)) fail(ErrorKind::ZeroSpeed, "|a'| below speed tolerance");
  const Vec3 c = cross(d1, d2);
  const double cn = norm(c);
  if (!(cn > tol.cross)) fail(ErrorKind::DegenerateFrame, "|a' x a''| below tolerance; frame undefined");
  FrenetFrame f;
  f.speed = speed;
  f.T = d1 / speed;
  f.B = c / cn;
  f.N = cross(f.B, f.T);
  f.kappa = cn / (speed * speed * speed);
  f.tau = dot(c, d3) / (cn * cn);
  return f;
}

inline FrenetFrame frame_at(const ParamCurve& curve, double t, const Tolerances& tol = {}) {
  return frame_from_derivatives(curve.eval(t, 1), curve.eval(t, 2), curve.eval(t, 3), tol);
}

/// Curvature and torsion at t. Curvature alone is defined on straight pieces;
/// torsion needs a' x a'' away from zero, otherwise DegenerateFrame.
inline CurvatureTorsion curvature_torsion(const ParamCurve& curve, double t, const Tolerances& tol = {}) {
  const Vec3 d1 = curve.eval(t, 1);
  const Vec3 d2 = curve.eval(t, 2);
  const double speed = norm(d1);
  if (!(speed > tol.speed)) fail(ErrorKind::ZeroSpeed, "|a'| below speed tolerance");
  const Vec3 c = cross(d1, d2);
  const double cn = norm(c);
  if (!(cn > tol.cross)) fail(ErrorKind::DegenerateFrame, "torsion undefined where a' x a'' vanishes");
  return {cn / (speed * speed * speed), dot(c, curve.eval(t, 3)) / (cn * cn)};
}

/// Length of the curve between t0 and t1 (t0 <= t1), adaptive Simpson on |a'|.
inline double arc_length(const ParamCurve& curve, double t0, double t1) {
  if (!curve.domain().contains(t0) || !curve.domain().contains(t1)) {
    fail(ErrorKind::OutOfDomain, "arc-length bounds outside curve domain");
  }
  if (t1 < t0) fail(ErrorKind::InvalidArgument, "arc_length needs t0 <= t1");
  if (t0 == t1) return 0.0;
  auto speed = [&curve](double u) { return norm(curve.eval(u, 1)); };
  const double rough = adaptive_simpson(speed, t0, t1, 1e-6 * (t1 - t0) * (speed(t0) + speed(t1) + 1e-300), 6);
  return adaptive_simpson(speed, t0, t1, 1e-12 * std::fabs(rough) + 1e-300, 30);
}

/// Unit-speed copy of a regular curve over [0, L]. The arc-length table has
/// `grid_size` cells; positions are found by inverting it.
inline ParamCurve reparam_by_arclength(const ParamCurve& curve, std::size_t grid_size = 256,
                                       const Tolerances& tol = {}) {
  return ParamCurve::arclength(std::make_shared<const ArcLengthMap>(curve, grid_size, tol));
}

}  // namespace helixlift
