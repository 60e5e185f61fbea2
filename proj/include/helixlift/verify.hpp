#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "helixlift/fixtures.hpp"
#include "helixlift/lift.hpp"

namespace helixlift {

// ---------------------------------------------------------------------------
// Finite-difference oracle
// ---------------------------------------------------------------------------

/// Frenet frame built only from position samples on the 5-point stencil
/// {t-2h, t-h, t, t+h, t+2h}; never touches the curve's own derivatives.
inline FrenetFrame oracle_frame(const ParamCurve& curve, double t, double h) {
  if (!(h > 0.0)) fail(ErrorKind::InvalidArgument, "oracle step must be positive");
  const Interval& iv = curve.domain();
  if (t - 2.0 * h < iv.lo || t + 2.0 * h > iv.hi) {
    fail(ErrorKind::StencilOutOfDomain, "oracle stencil around t = " + std::to_string(t) + " leaves the domain");
  }
  const Vec3 m2 = curve.position(t - 2.0 * h);
  const Vec3 m1 = curve.position(t - h);
  const Vec3 p0 = curve.position(t);
  const Vec3 p1 = curve.position(t + h);
  const Vec3 p2 = curve.position(t + 2.0 * h);
  const Vec3 d1 = (p1 - m1) / (2.0 * h);
  const Vec3 d2 = (p1 - 2.0 * p0 + m1) / (h * h);
  const Vec3 d3 = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);

  const Tolerances defaults;
  const double speed = norm(d1);
  if (!(speed > defaults.speed)) fail(ErrorKind::ZeroSpeed, "oracle speed vanishes");
  const Vec3 b = cross(d1, d2);
  const double bn = norm(b);
  if (!(bn > defaults.cross)) fail(ErrorKind::DegenerateFrame, "oracle a' x a'' vanishes");
  FrenetFrame f;
  f.speed = speed;
  f.T = d1 / speed;
  f.B = b / bn;
  f.N = cross(f.B, f.T);
  f.kappa = bn / (speed * speed * speed);
  f.tau = dot(b, d3) / (bn * bn);
  return f;
}

/// Largest component differences between two frames, after flipping (N, B)
/// of `b` jointly when its normal points against `a`'s.
struct FrameDelta {
  double dT = 0.0;
  double dN = 0.0;
  double dB = 0.0;
  double dkappa = 0.0;  ///< relative
  double dtau = 0.0;    ///< relative

  double max_direction() const { return std::max({dT, dN, dB}); }
};

inline FrameDelta compare_frames(const FrenetFrame& a, FrenetFrame b, const Tolerances& tol = {}) {
  (void)tol;
  if (dot(a.N, b.N) < 0.0) {
    b.N = -b.N;
    b.B = -b.B;
  }
  auto rel = [](double x, double y) { return std::fabs(x - y) / std::fmax(std::fabs(x), kConstancyFloor); };
  return {max_abs_diff(a.T, b.T), max_abs_diff(a.N, b.N), max_abs_diff(a.B, b.B), rel(a.kappa, b.kappa),
          rel(a.tau, b.tau)};
}

/// n samples spread uniformly over the part of the domain where the oracle
/// stencil of step h fits.
inline std::vector<double> oracle_grid(const Interval& iv, std::size_t n, double h) {
  const double margin = 2.0 * h * (1.0 + 1e-9) + 1e-12 * std::max(1.0, std::fabs(iv.hi));
  if (!(iv.lo + margin < iv.hi - margin)) fail(ErrorKind::StencilOutOfDomain, "domain too short for oracle stencil");
  return uniform_grid({iv.lo + margin, iv.hi - margin}, n);
}

// ---------------------------------------------------------------------------
// Theorem checks
// ---------------------------------------------------------------------------

struct TheoremResult {
  bool pass = false;
  double residual = 0.0;
  double value = 0.0;  ///< representative measured value (see run_theorem_checks)
  bool skipped = false;
};

struct TheoremChecks {
  TheoremResult theorem1;  ///< residual: rel_dev of <a, Tbar>; value: its mean
  TheoremResult theorem2;  ///< pass: slant flags agree; residual: max sigma rel_dev of base and lift
  TheoremResult theorem3;  ///< residual: 1 - min |Nbar . N|; value: min |Nbar . N|
  bool base_slant = false;
  bool lift_slant = false;
};

/// Lifts the unit-speed general helix `alpha` with `spec` and checks, using
/// oracle frames of the lifted curve:
///   1. <a, Tbar> is constant (the lift is a general helix about the same axis),
///   2. the base is a slant helix iff the lift is,
///   3. Nbar is parallel to N at every sample (Bertrand mates).
/// Degenerate angles (0, pi/2) build the lift but skip all frame comparisons.
inline TheoremChecks run_theorem_checks(const ParamCurve& alpha, const LiftSpec& spec, std::size_t grid_size,
                                        const Tolerances& tol = {}) {
  tol.validate();
  const ParamCurve lifted = lift_curve(alpha, spec, grid_size, tol);
  TheoremChecks out;
  if (is_degenerate_angle(spec.theta)) {
    out.theorem1 = out.theorem2 = out.theorem3 = TheoremResult{true, 0.0, 0.0, true};
    return out;
  }
  const Vec3 axis = normalized(std::get<LiftedShape>(lifted.shape()).axis);
  const double h = tol.fd_step;

  std::vector<double> angles;
  double min_dot = std::numeric_limits<double>::infinity();
  for (double s : oracle_grid(alpha.domain(), grid_size, h)) {
    const FrenetFrame bar = oracle_frame(lifted, s, h);
    angles.push_back(dot(axis, bar.T));
    min_dot = std::fmin(min_dot, std::fabs(dot(bar.N, frame_at(alpha, s, tol).N)));
  }
  const ConstancyStat angle_stat = constancy(angles);
  out.theorem1 = {angle_stat.rel_dev <= tol.vector, angle_stat.rel_dev, angle_stat.mean, false};
  out.theorem3 = {1.0 - min_dot <= tol.vector, 1.0 - min_dot, min_dot, false};

  const SlantResult base = slant_test(alpha, grid_size, tol);
  const SlantResult lift = slant_test(lifted, grid_size, tol);
  out.base_slant = base.is_slant;
  out.lift_slant = lift.is_slant;
  out.theorem2 = {base.is_slant == lift.is_slant, std::fmax(base.stat.rel_dev, lift.stat.rel_dev),
                  lift.stat.mean, false};
  return out;
}

// ---------------------------------------------------------------------------
// Worked-example reproduction and errata
// ---------------------------------------------------------------------------

/// One printed claim compared against the oracle at a few sample parameters.
struct ErrataEntry {
  std::string claim_id;
  std::string printed_expr;
  std::string location;
  std::vector<double> samples;
  std::vector<double> printed_value;
  std::vector<double> oracle_value;
  double max_abs_diff = 0.0;
  bool agrees = false;
};

struct ConvergenceCheck {
  bool pass = false;
  double ratio = 0.0;  ///< delta(h) / delta(h/2)
  double coarse_step = 0.0;
};

struct VerificationConfig {
  std::size_t grid_size = 0;
  std::size_t arclength_cells = 0;
  Tolerances tol;
};

struct VerificationReport {
  TheoremResult theorem1, theorem2, theorem3;
  ConvergenceCheck oracle_convergence;
  std::vector<ErrataEntry> example_checks;
  VerificationConfig config;

  /// Theorem invariants and oracle self-consistency; printed-formula
  /// disagreements do not count.
  bool passed() const {
    return theorem1.pass && theorem2.pass && theorem3.pass && oracle_convergence.pass;
  }

  const ErrataEntry* find(std::string_view id) const {
    for (const auto& e : example_checks) {
      if (e.claim_id == id) return &e;
    }
    return nullptr;
  }
};

/// Printed closed forms of the cubic worked example, as functions of its own
/// parameter s.
namespace printed {

inline double q(double s) { return s * s + 2.0; }

inline Vec3 tangent(double s) { return Vec3{2.0, 2.0 * s, s * s} / q(s); }
inline Vec3 normal(double s) {
  return Vec3{-2.0 * s * s * s - 4.0 * s, s * s * s * s - 4.0 * s * s - 8.0, 2.0 * s * s * s + 4.0 * s} / (q(s) * q(s));
}
inline Vec3 binormal(double s) { return Vec3{s * s, -2.0 * s, 2.0} / q(s); }
inline double curvature(double s) { return 2.0 / (3.0 * q(s)); }
inline double torsion(double s) { return 2.0 / (3.0 * q(s)); }
inline constexpr double theta = std::numbers::pi / 4;
inline Vec3 axis(double s) {
  const double r2 = std::numbers::sqrt2;
  const double v = (2.0 * r2 + r2 * s * s) / q(s);
  return {v, 0.0, v};
}
inline Vec3 lifted(double s) {
  const double r2 = std::numbers::sqrt2;
  return {((3.0 * r2 + 1.0) * s * s * s + (6.0 * r2 + 2.0) * s) / q(s), 1.5 * r2 * s * s,
          (0.5 * r2 * std::pow(s, 5) + (r2 + 1.0) * s * s * s + 2.0 * s) / q(s)};
}
inline Vec3 lifted_tangent(double s) {
  const double r2 = std::numbers::sqrt2;
  return Vec3{1.0 + 2.0 * r2 / q(s), 2.0 * r2 * s / q(s), 1.0 + r2 * s * s / q(s)} / std::sqrt(4.0 + 2.0 * r2);
}
inline Vec3 lifted_normal(double s) {
  const double r2 = std::numbers::sqrt2;
  const double k = (4.0 + 2.0 * r2 - 3.0 * q(s) * q(s)) /
                   (std::sqrt(4.0 + 2.0 * r2) * std::sqrt(9.0 * std::pow(q(s), 4) + 8.0));
  return k * normal(s);
}
inline Vec3 lifted_binormal(double s) {
  const double r2 = std::numbers::sqrt2;
  return Vec3{6.0 * q(s) + 2.0 * r2 * s * s / q(s), 6.0 * s * q(s) - 4.0 * r2 * s / q(s),
              3.0 * s * s * q(s) - 4.0 * r2 / q(s)} /
         std::sqrt(9.0 * std::pow(q(s), 4) + 8.0);
}
/// <a, Tbar> as stated in the general-helix argument.
inline double axis_angle_cos(double th) {
  const double c = std::cos(th);
  const double s = std::sin(th);
  const double den = std::sqrt(1.0 + c * std::sin(2.0 * th));
  return (c * s + c * c * c) / den + c * s * s / den;
}

}  // namespace printed

namespace detail {

inline void append(std::vector<double>& out, const Vec3& v) {
  out.push_back(v.x);
  out.push_back(v.y);
  out.push_back(v.z);
}

inline ErrataEntry make_entry(std::string id, std::string expr, std::string location, std::vector<double> samples,
                              std::vector<double> printed, std::vector<double> oracle, double tolerance) {
  ErrataEntry e{std::move(id), std::move(expr), std::move(location), std::move(samples), std::move(printed),
                std::move(oracle), 0.0, false};
  for (std::size_t i = 0; i < e.printed_value.size(); ++i) {
    e.max_abs_diff = std::fmax(e.max_abs_diff, std::fabs(e.printed_value[i] - e.oracle_value[i]));
  }
  e.agrees = e.max_abs_diff <= tolerance;
  return e;
}

/// Vector claim evaluated at each sample.
inline ErrataEntry vector_entry(std::string id, std::string expr, std::string location,
                                const std::vector<double>& samples, const std::function<Vec3(double)>& printed_fn,
                                const std::function<Vec3(double)>& oracle_fn, double tolerance) {
  std::vector<double> p, o;
  for (double s : samples) {
    append(p, printed_fn(s));
    append(o, oracle_fn(s));
  }
  return make_entry(std::move(id), std::move(expr), std::move(location), samples, std::move(p), std::move(o),
                    tolerance);
}

inline ErrataEntry scalar_entry(std::string id, std::string expr, std::string location,
                                const std::vector<double>& samples, const std::function<double(double)>& printed_fn,
                                const std::function<double(double)>& oracle_fn, double tolerance) {
  std::vector<double> p, o;
  for (double s : samples) {
    p.push_back(printed_fn(s));
    o.push_back(oracle_fn(s));
  }
  return make_entry(std::move(id), std::move(expr), std::move(location), samples, std::move(p), std::move(o),
                    tolerance);
}

}  // namespace detail

/// Convergence of the oracle against exact derivatives at one parameter:
/// ratio of max direction deltas at steps h and h/2. Second-order stencils
/// should give about 4.
inline ConvergenceCheck oracle_convergence(const ParamCurve& curve, double t, double h, const Tolerances& tol = {}) {
  const FrenetFrame exact = frame_at(curve, t, tol);
  const double coarse = compare_frames(exact, oracle_frame(curve, t, h), tol).max_direction();
  const double fine = compare_frames(exact, oracle_frame(curve, t, 0.5 * h), tol).max_direction();
  ConvergenceCheck c;
  c.coarse_step = h;
  c.ratio = coarse / std::fmax(fine, std::numeric_limits<double>::min());
  c.pass = c.ratio >= 3.5;
  return c;
}

/// End-to-end reproduction of the cubic worked example plus the theorem checks
/// on its unit-speed reparameterization. Printed-formula mismatches land in
/// example_checks; they never make the report fail.
inline VerificationReport run_paper_suite(const Tolerances& tol = {}, std::size_t grid_size = 100,
                                          std::size_t arclength_cells = 256) {
  tol.validate();
  VerificationReport report;
  report.config = {grid_size, arclength_cells, tol};

  const ParamCurve cubic = fixtures::paper_cubic();
  const ParamCurve unit = reparam_by_arclength(cubic, arclength_cells, tol);
  const ArcLengthMap& map = *std::get<ArcLengthShape>(unit.shape()).map;

  LiftSpec spec;
  spec.theta = std::numbers::pi / 4;
  spec.axis_mode = AxisMode::unit;
  const TheoremChecks checks = run_theorem_checks(unit, spec, grid_size, tol);
  report.theorem1 = checks.theorem1;
  report.theorem2 = checks.theorem2;
  report.theorem3 = checks.theorem3;
  report.oracle_convergence = oracle_convergence(cubic, 1.0, 1e-2, tol);

  const double h = tol.fd_step;
  const double agree = tol.vector;
  const std::vector<double> frame_samples{0.0, 1.0, 2.0};
  auto oracle = [&](double s) { return oracle_frame(cubic, s, h); };

  const ParamCurve unit_lift = lift_curve(unit, spec, grid_size, tol);
  auto lift_frame = [&](double s) { return oracle_frame(unit_lift, map.length_at(s), h); };
  auto base_frame = [&](double s) { return frame_at(unit, map.length_at(s), tol); };

  LiftSpec printed_spec = spec;
  printed_spec.axis_mode = AxisMode::paper_printed;
  const ParamCurve literal_lift = lift_curve_literal(cubic, printed_spec, grid_size, tol);

  auto& out = report.example_checks;
  using detail::scalar_entry;
  using detail::vector_entry;

  out.push_back(vector_entry("example.T", "(2/(s^2+2), 2s/(s^2+2), s^2/(s^2+2))", "worked example: tangent",
                             frame_samples, printed::tangent, [&](double s) { return oracle(s).T; }, agree));
  out.push_back(vector_entry("example.N", "((-2s^3-4s), (s^4-4s^2-8), (2s^3+4s)) / (s^2+2)^2",
                             "worked example: principal normal", frame_samples, printed::normal,
                             [&](double s) { return oracle(s).N; }, agree));
  out.push_back(vector_entry("example.B", "(s^2/(s^2+2), -2s/(s^2+2), 2/(s^2+2))", "worked example: binormal",
                             frame_samples, printed::binormal, [&](double s) { return oracle(s).B; }, agree));
  out.push_back(scalar_entry("example.kappa", "2/(3(s^2+2))", "worked example: curvature", frame_samples,
                             printed::curvature, [&](double s) { return oracle(s).kappa; }, agree));
  out.push_back(scalar_entry("example.tau", "2/(3(s^2+2))", "worked example: torsion", frame_samples,
                             printed::torsion, [&](double s) { return oracle(s).tau; }, agree));
  out.push_back(scalar_entry(
      "example.theta", "atan(kappa/tau) = pi/4", "worked example: helix angle", frame_samples,
      [](double) { return printed::theta; },
      [&](double s) {
        const FrenetFrame f = oracle(s);
        return std::atan(f.kappa / f.tau);
      },
      agree));
  auto oracle_axis = [&](double s) {
    const FrenetFrame f = oracle(s);
    const double th = std::atan(f.kappa / f.tau);
    return std::cos(th) * f.T + std::sin(th) * f.B;
  };
  out.push_back(vector_entry("example.axis", "((2sqrt2+sqrt2 s^2)/(s^2+2), 0, (2sqrt2+sqrt2 s^2)/(s^2+2))",
                             "worked example: helix axis", frame_samples, printed::axis, oracle_axis, agree));
  out.push_back(scalar_entry(
      "example.axis_norm", "|((2sqrt2+sqrt2 s^2)/(s^2+2), 0, (2sqrt2+sqrt2 s^2)/(s^2+2))|",
      "worked example: helix axis length", frame_samples, [](double s) { return norm(printed::axis(s)); },
      [&](double s) { return norm(oracle_axis(s)); }, agree));

  out.push_back(vector_entry(
      "example.alpha_bar",
      "(((3sqrt2+1)s^3+(6sqrt2+2)s)/(s^2+2), (3sqrt2/2)s^2, ((sqrt2/2)s^5+(sqrt2+1)s^3+2s)/(s^2+2))",
      "worked example: lifted curve (printed axis, s0 = 0, zero offset)", {0.5, 1.0, 2.0}, printed::lifted,
      [&](double s) { return literal_lift.position(s); }, 1e-9));
  out.push_back(vector_entry("example.Tbar", "(1/sqrt(4+2sqrt2)) (1+2sqrt2/(s^2+2), 2sqrt2 s/(s^2+2), 1+sqrt2 s^2/(s^2+2))",
                             "worked example: lifted tangent vs unit-speed, unit-axis lift", frame_samples,
                             printed::lifted_tangent, [&](double s) { return lift_frame(s).T; }, agree));
  out.push_back(vector_entry("example.Tbar_literal",
                             "(1/sqrt(4+2sqrt2)) (1+2sqrt2/(s^2+2), 2sqrt2 s/(s^2+2), 1+sqrt2 s^2/(s^2+2))",
                             "worked example: lifted tangent vs printed-axis lift in the example parameter",
                             frame_samples, printed::lifted_tangent,
                             [&](double s) { return oracle_frame(literal_lift, s, h).T; }, agree));
  out.push_back(vector_entry("example.Nbar", "(4+2sqrt2-3(s^2+2)^2)/(sqrt(4+2sqrt2) sqrt(9(s^2+2)^4+8)) N(s)",
                             "worked example: lifted principal normal", frame_samples, printed::lifted_normal,
                             [&](double s) { return lift_frame(s).N; }, agree));
  out.push_back(vector_entry("example.Bbar",
                             "(6(s^2+2)+2sqrt2 s^2/(s^2+2), 6s(s^2+2)-4sqrt2 s/(s^2+2), 3s^2(s^2+2)-4sqrt2/(s^2+2)) "
                             "/ sqrt(9(s^2+2)^4+8)",
                             "worked example: lifted binormal", frame_samples, printed::lifted_binormal,
                             [&](double s) { return lift_frame(s).B; }, agree));

  // General closed forms in the base frame, evaluated on the unit-speed cubic.
  auto closed = [&](double s) {
    const FrenetFrame f = base_frame(s);
    return closed_form_lift_frame(f.kappa, f.tau, spec.theta);
  };
  out.push_back(detail::vector_entry(
      "closed_form.Tbar", "((sin+cos^2)/sqrt(1+cos sin2), 0, cos sin/sqrt(1+cos sin2)) in (T, N, B)",
      "lifted tangent in the base frame", frame_samples,
      [&](double s) {
        const ClosedFormFrame c = closed(s);
        return Vec3{c.tbar_T_coeff, 0.0, c.tbar_B_coeff};
      },
      [&](double s) {
        const FrenetFrame f = base_frame(s);
        const Vec3 t = lift_frame(s).T;
        return Vec3{dot(t, f.T), dot(t, f.N), dot(t, f.B)};
      },
      agree));
  out.push_back(detail::vector_entry(
      "closed_form.lambda_mu",
      "(lambda, 0, mu)/sqrt(lambda^2+mu^2) in (T, N, B); lambda = cos sin^2 + cos^3 sin, "
      "mu = (sin+cos^2) kappa - (cos sin^2 + cos^3 sin) tau",
      "lifted binormal in the base frame", frame_samples,
      [&](double s) {
        const ClosedFormFrame c = closed(s);
        return Vec3{c.bbar_T_coeff, 0.0, c.bbar_B_coeff};
      },
      [&](double s) {
        const FrenetFrame f = base_frame(s);
        const Vec3 b = lift_frame(s).B;
        return Vec3{dot(b, f.T), dot(b, f.N), dot(b, f.B)};
      },
      agree));
  out.push_back(scalar_entry(
      "closed_form.c", "mu/sqrt(lambda^2+mu^2) Tbar_T - lambda/sqrt(lambda^2+mu^2) Tbar_B",
      "lifted normal factor Nbar = c N", frame_samples, [&](double s) { return closed(s).c; },
      [&](double s) { return dot(lift_frame(s).N, base_frame(s).N); }, agree));
  out.push_back(scalar_entry(
      "theorem1.axis_angle", "(cos sin + cos^3)/sqrt(1+cos sin2) + cos sin^2/sqrt(1+cos sin2)",
      "general-helix argument: <a, Tbar>", frame_samples, [&](double) { return printed::axis_angle_cos(spec.theta); },
      [&](double s) { return dot(normalized(std::get<LiftedShape>(unit_lift.shape()).axis), lift_frame(s).T); },
      agree));
  return report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const TheoremResult& r) {
  return {{"pass", r.pass}, {"residual", r.residual}, {"value", r.value}, {"skipped", r.skipped}};
}

inline nlohmann::json to_json(const ErrataEntry& e) {
  return {{"claim_id", e.claim_id},   {"printed_expr", e.printed_expr}, {"location", e.location},
          {"samples", e.samples},     {"printed_value", e.printed_value}, {"oracle_value", e.oracle_value},
          {"max_abs_diff", e.max_abs_diff}, {"agrees", e.agrees}};
}

inline nlohmann::json to_json(const Tolerances& t) {
  return {{"fd_step", t.fd_step}, {"vector", t.vector}, {"constancy", t.constancy}, {"speed", t.speed},
          {"cross", t.cross}};
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& e : r.example_checks) checks.push_back(to_json(e));
  return {{"theorem1", to_json(r.theorem1)},
          {"theorem2", to_json(r.theorem2)},
          {"theorem3", to_json(r.theorem3)},
          {"oracle_convergence",
           {{"pass", r.oracle_convergence.pass},
            {"ratio", r.oracle_convergence.ratio},
            {"coarse_step", r.oracle_convergence.coarse_step}}},
          {"example_checks", std::move(checks)},
          {"passed", r.passed()},
          {"config",
           {{"grid", r.config.grid_size}, {"arclength_cells", r.config.arclength_cells},
            {"tolerances", to_json(r.config.tol)}}}};
}

}  // namespace helixlift
