#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "helixlift/frenet.hpp"

namespace helixlift {

/// Floor for the denominator of ConstancyStat::rel_dev on quantities that are
/// never near zero (curvature ratio, curvature, torsion).
inline constexpr double kConstancyFloor = 1e-12;

/// Absolute floor for sigma, which vanishes on every general helix.
inline constexpr double kSigmaFloor = 1e-5;

/// How far a sampled quantity strays from its mean.
struct ConstancyStat {
  double mean = 0.0;
  double max_abs_dev = 0.0;
  double rel_dev = 0.0;  ///< max_abs_dev / max(|mean|, floor)
  std::size_t grid_size = 0;
};

inline ConstancyStat constancy(std::span<const double> values, double floor = kConstancyFloor) {
  ConstancyStat s;
  s.grid_size = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  for (double v : values) s.max_abs_dev = std::fmax(s.max_abs_dev, std::fabs(v - s.mean));
  s.rel_dev = s.max_abs_dev / std::fmax(std::fabs(s.mean), floor);
  return s;
}

struct LancretResult {
  bool is_general_helix = false;
  double theta = 0.0;  ///< atan(|mean kappa/tau|), in (0, pi/2)
  double tau_sign = 1.0;
  ConstancyStat stat;  ///< statistics of kappa/tau
};

/// Lancret test: a curve is a general helix iff kappa/tau is constant.
/// Refuses (DegenerateFrame) when torsion vanishes at a sample.
inline LancretResult lancret_test(const ParamCurve& curve, std::size_t grid_size, const Tolerances& tol = {}) {
  tol.validate();
  std::vector<double> ratios;
  ratios.reserve(grid_size);
  for (double t : uniform_grid(curve.domain(), grid_size)) {
    const auto [kappa, tau] = curvature_torsion(curve, t, tol);
    if (!(std::fabs(tau) > tol.vector * kappa)) {
      fail(ErrorKind::DegenerateFrame, "torsion vanishes at t = " + std::to_string(t) + "; classification refused");
    }
    ratios.push_back(kappa / tau);
  }
  LancretResult r;
  r.stat = constancy(ratios);
  r.is_general_helix = r.stat.rel_dev <= tol.constancy;
  r.tau_sign = r.stat.mean < 0 ? -1.0 : 1.0;
  r.theta = std::atan(std::fabs(r.stat.mean));
  return r;
}

struct HelixAxis {
  Vec3 axis;           ///< unit direction
  double theta = 0.0;
  ConstancyStat stat;  ///< deviation of per-sample axes from their mean vector
  double max_sample_deviation = 0.0;  ///< max |sample - axis|
};

/// Axis a = cos(theta) T + sin(theta) B averaged over the grid. For negative
/// torsion the binormal term carries the sign of tau so theta stays in (0, pi/2).
inline HelixAxis helix_axis(const ParamCurve& curve, std::size_t grid_size, const Tolerances& tol = {}) {
  const LancretResult lancret = lancret_test(curve, grid_size, tol);
  if (!lancret.is_general_helix) fail(ErrorKind::NotAHelix, "kappa/tau is not constant on the grid");
  const double c = std::cos(lancret.theta);
  const double s = lancret.tau_sign * std::sin(lancret.theta);
  std::vector<Vec3> samples;
  samples.reserve(grid_size);
  Vec3 sum;
  for (double t : uniform_grid(curve.domain(), grid_size)) {
    const FrenetFrame f = frame_at(curve, t, tol);
    samples.push_back(c * f.T + s * f.B);
    sum += samples.back();
  }
  const Vec3 mean = sum / static_cast<double>(samples.size());
  HelixAxis out;
  out.theta = lancret.theta;
  out.axis = normalized(mean);
  out.stat.grid_size = samples.size();
  out.stat.mean = norm(mean);
  for (const Vec3& v : samples) {
    out.stat.max_abs_dev = std::fmax(out.stat.max_abs_dev, norm(v - mean));
    out.max_sample_deviation = std::fmax(out.max_sample_deviation, norm(v - out.axis));
  }
  out.stat.rel_dev = out.stat.max_abs_dev / std::fmax(out.stat.mean, kConstancyFloor);
  if (out.stat.rel_dev > tol.constancy) fail(ErrorKind::NotAHelix, "axis samples are not constant");
  return out;
}

struct SlantResult {
  bool is_slant = false;
  ConstancyStat stat;  ///< statistics of sigma
  std::vector<double> sigma;
};

/// Geodesic curvature of the principal-normal indicatrix,
///   sigma = kappa^2 / (kappa^2 + tau^2)^(3/2) * d/ds (tau / kappa),
/// at parameter t. The derivative is a second-order finite difference in the
/// curve parameter, converted to arc length by the speed.
inline double slant_sigma(const ParamCurve& curve, double t, double h, const Tolerances& tol = {}) {
  const Interval& iv = curve.domain();
  auto ratio = [&](double u) {
    const auto [k, ta] = curvature_torsion(curve, u, tol);
    return ta / k;
  };
  double d_dt = 0.0;
  if (t - h >= iv.lo && t + h <= iv.hi) {
    d_dt = (ratio(t + h) - ratio(t - h)) / (2.0 * h);
  } else {
    const double g = (t - iv.lo < iv.hi - t) ? h : -h;
    d_dt = (-3.0 * ratio(t) + 4.0 * ratio(t + g) - ratio(t + 2.0 * g)) / (2.0 * g);
  }
  const Vec3 d1 = curve.eval(t, 1);
  const auto [kappa, tau] = curvature_torsion(curve, t, tol);
  const double k2 = kappa * kappa;
  return k2 / std::pow(k2 + tau * tau, 1.5) * (d_dt / norm(d1));
}

/// Slant-helix test: sigma constant on the grid.
inline SlantResult slant_test(const ParamCurve& curve, std::size_t grid_size, const Tolerances& tol = {}) {
  tol.validate();
  const double h = std::min(tol.fd_step, curve.domain().length() / 8.0);
  SlantResult r;
  for (double t : uniform_grid(curve.domain(), grid_size)) r.sigma.push_back(slant_sigma(curve, t, h, tol));
  r.stat = constancy(r.sigma, kSigmaFloor);
  r.is_slant = r.stat.rel_dev <= tol.constancy;
  return r;
}

struct BertrandResult {
  bool is_bertrand = false;
  double min_abs_dot = 0.0;  ///< min over grid of |N_a . N_b|
  ConstancyStat stat;        ///< statistics of |N_a . N_b|
};

/// Same-parameter Bertrand test: principal normals parallel at every sample.
inline BertrandResult bertrand_test(const ParamCurve& a, const ParamCurve& b, std::size_t grid_size,
                                    const Tolerances& tol = {}) {
  tol.validate();
  const Interval& da = a.domain();
  const Interval& db = b.domain();
  const double scale = std::max({1.0, std::fabs(da.lo), std::fabs(da.hi)});
  if (std::fabs(da.lo - db.lo) > 1e-12 * scale || std::fabs(da.hi - db.hi) > 1e-12 * scale) {
    fail(ErrorKind::DomainMismatch, "Bertrand pairing needs a shared parameter domain");
  }
  std::vector<double> dots;
  BertrandResult r;
  r.min_abs_dot = std::numeric_limits<double>::infinity();
  for (double t : uniform_grid(da, grid_size)) {
    const double d = std::fabs(dot(frame_at(a, t, tol).N, frame_at(b, t, tol).N));
    dots.push_back(d);
    r.min_abs_dot = std::fmin(r.min_abs_dot, d);
  }
  r.stat = constancy(dots);
  r.is_bertrand = r.min_abs_dot >= 1.0 - tol.vector;
  return r;
}

struct HelixClassification {
  bool is_general_helix = false;
  bool is_circular_helix = false;
  bool is_slant_helix = false;
  std::optional<double> theta;
  std::optional<Vec3> axis;
  ConstancyStat ratio_stat, sigma_stat, kappa_stat, tau_stat;
};

/// Runs every classifier on the same grid.
inline HelixClassification classify(const ParamCurve& curve, std::size_t grid_size, const Tolerances& tol = {}) {
  HelixClassification out;
  const LancretResult lancret = lancret_test(curve, grid_size, tol);
  out.ratio_stat = lancret.stat;
  out.is_general_helix = lancret.is_general_helix;

  std::vector<double> kappas, taus;
  for (double t : uniform_grid(curve.domain(), grid_size)) {
    const auto [k, ta] = curvature_torsion(curve, t, tol);
    kappas.push_back(k);
    taus.push_back(ta);
  }
  out.kappa_stat = constancy(kappas);
  out.tau_stat = constancy(taus);
  out.is_circular_helix = out.is_general_helix && out.kappa_stat.rel_dev <= tol.constancy &&
                          out.tau_stat.rel_dev <= tol.constancy;

  const SlantResult slant = slant_test(curve, grid_size, tol);
  out.sigma_stat = slant.stat;
  out.is_slant_helix = slant.is_slant;

  if (out.is_general_helix) {
    out.theta = lancret.theta;
    try {
      out.axis = helix_axis(curve, grid_size, tol).axis;
    } catch (const GeometryError& e) {
      if (e.kind() != ErrorKind::NotAHelix) throw;
    }
  }
  return out;
}

}  // namespace helixlift
