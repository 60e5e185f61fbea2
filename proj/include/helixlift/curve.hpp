#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "helixlift/errors.hpp"
#include "helixlift/lift_spec.hpp"
#include "helixlift/quadrature.hpp"
#include "helixlift/tolerances.hpp"
#include "helixlift/vec3.hpp"

namespace helixlift {

/// Closed parameter interval [lo, hi] with lo < hi.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double t) const { return t >= lo && t <= hi; }
  double at_fraction(double f) const { return lo + f * (hi - lo); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Uniform grid of n >= 2 points covering [lo, hi] including both ends.
inline std::vector<double> uniform_grid(const Interval& iv, std::size_t n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "grid size must be at least 2");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = iv.at_fraction(static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.back() = iv.hi;
  return out;
}

enum class CurveKind { polynomial, circular_helix, polyline, lifted, arclength };

constexpr std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::polynomial: return "polynomial";
    case CurveKind::circular_helix: return "circular_helix";
    case CurveKind::polyline: return "polyline";
    case CurveKind::lifted: return "lifted";
    case CurveKind::arclength: return "arclength";
  }
  return "polynomial";
}

class ParamCurve;
class ArcLengthMap;

namespace detail {

/// Natural cubic spline through vector-valued samples at strictly increasing knots.
class NaturalSpline3 {
 public:
  NaturalSpline3(std::vector<double> knots, std::vector<Vec3> values)
      : knots_(std::move(knots)), values_(std::move(values)), second_(knots_.size()) {
    const std::size_t n = knots_.size();
    if (n < 3) return;  // two points: straight segment, all second derivatives zero
    // Tridiagonal system for interior second derivatives (Thomas algorithm).
    std::vector<double> diag(n, 0.0), upper(n, 0.0);
    std::vector<Vec3> rhs(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = knots_[i] - knots_[i - 1];
      const double h1 = knots_[i + 1] - knots_[i];
      const double lower = h0 / 6.0;
      diag[i] = (h0 + h1) / 3.0;
      upper[i] = h1 / 6.0;
      rhs[i] = (values_[i + 1] - values_[i]) / h1 - (values_[i] - values_[i - 1]) / h0;
      if (i > 1) {
        const double w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
      }
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      Vec3 r = rhs[i];
      if (i + 2 < n) r -= upper[i] * second_[i + 1];
      second_[i] = r / diag[i];
    }
  }

  Vec3 eval(double t, int order) const {
    const std::size_t n = knots_.size();
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    i = std::min(i, n - 2);
    const double h = knots_[i + 1] - knots_[i];
    const double a = (knots_[i + 1] - t) / h;
    const double b = (t - knots_[i]) / h;
    const Vec3& y0 = values_[i];
    const Vec3& y1 = values_[i + 1];
    const Vec3& m0 = second_[i];
    const Vec3& m1 = second_[i + 1];
    switch (order) {
      case 0:
        return a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * (h * h / 6.0);
      case 1:
        return (y1 - y0) / h + ((3.0 * b * b - 1.0) * m1 - (3.0 * a * a - 1.0) * m0) * (h / 6.0);
      case 2:
        return a * m0 + b * m1;
      default:
        return (m1 - m0) / h;
    }
  }

 private:
  std::vector<double> knots_;
  std::vector<Vec3> values_;
  std::vector<Vec3> second_;
};

}  // namespace detail

struct PolynomialShape {
  std::array<std::vector<double>, 3> coeffs;  ///< ascending degree, per component
};

struct CircularHelixShape {
  double radius = 1.0;
  double pitch = 0.0;  ///< rise per radian: (r cos t, r sin t, pitch t)
};

struct PolylineShape {
  std::vector<Vec3> points;
  std::vector<double> knots;
  std::shared_ptr<const detail::NaturalSpline3> spline;
};

struct LiftedShape {
  std::shared_ptr<const ParamCurve> base;
  LiftSpec spec;
  Vec3 axis;  ///< effective axis vector after resolving spec.axis_mode
};

struct ArcLengthShape {
  std::shared_ptr<const ArcLengthMap> map;
};

/// An evaluable regular space curve over a closed parameter interval.
///
/// Values are immutable after construction and cheap to copy; nested curves
/// (lift bases, arc-length sources) are shared.
class ParamCurve {
 public:
  using Shape = std::variant<PolynomialShape, CircularHelixShape, PolylineShape, LiftedShape, ArcLengthShape>;

  static ParamCurve polynomial(std::array<std::vector<double>, 3> coeffs, Interval domain) {
    for (const auto& c : coeffs) {
      if (c.empty()) fail(ErrorKind::InvalidField, "polynomial coefficient lists must be non-empty");
      for (double v : c) {
        if (!std::isfinite(v)) fail(ErrorKind::InvalidField, "polynomial coefficients must be finite");
      }
    }
    return ParamCurve(domain, PolynomialShape{std::move(coeffs)});
  }

  static ParamCurve circular_helix(double radius, double pitch, Interval domain) {
    if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(pitch)) {
      fail(ErrorKind::InvalidField, "circular helix needs radius > 0 and finite pitch");
    }
    return ParamCurve(domain, CircularHelixShape{radius, pitch});
  }

  /// Polyline interpolated by a natural cubic spline through `points` at `knots`.
  /// The domain defaults to the knot range.
  static ParamCurve polyline(std::vector<Vec3> points, std::vector<double> knots,
                             std::optional<Interval> domain = std::nullopt) {
    if (points.size() < 2 || points.size() != knots.size()) {
      fail(ErrorKind::InvalidField, "polyline needs at least 2 points and one knot per point");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
      if (!(knots[i] > knots[i - 1])) fail(ErrorKind::InvalidField, "polyline knots must be strictly increasing");
    }
    const Interval iv = domain.value_or(Interval{knots.front(), knots.back()});
    if (iv.lo < knots.front() || iv.hi > knots.back()) {
      fail(ErrorKind::InvalidField, "polyline domain must lie within the knot range");
    }
    auto spline = std::make_shared<const detail::NaturalSpline3>(knots, points);
    return ParamCurve(iv, PolylineShape{std::move(points), std::move(knots), std::move(spline)});
  }

  /// Lifted curve over the base curve's domain. `axis` is the effective axis vector.
  static ParamCurve lifted(const ParamCurve& base, const LiftSpec& spec, const Vec3& axis) {
    if (!is_finite(axis) || !std::isfinite(spec.theta) || !std::isfinite(spec.s0) || !is_finite(spec.offset)) {
      fail(ErrorKind::InvalidField, "lift parameters must be finite");
    }
    return ParamCurve(base.domain(), LiftedShape{std::make_shared<const ParamCurve>(base), spec, axis});
  }

  /// Unit-speed reparameterization over [0, L] backed by an arc-length table.
  static ParamCurve arclength(std::shared_ptr<const ArcLengthMap> map);

  const Interval& domain() const { return domain_; }
  const Shape& shape() const { return shape_; }
  CurveKind kind() const { return static_cast<CurveKind>(shape_.index()); }

  bool uses_finite_differences() const { return finite_difference_; }
  std::optional<double> fd_step() const { return fd_step_; }

  /// Copy of this curve whose derivatives come from finite differences of
  /// positions instead of the exact formulas.
  ParamCurve with_finite_differences(std::optional<double> step = std::nullopt) const {
    if (step && !(*step > 0.0)) fail(ErrorKind::InvalidArgument, "finite-difference step must be positive");
    ParamCurve out = *this;
    out.finite_difference_ = true;
    out.fd_step_ = step;
    return out;
  }

  /// Step used for a derivative of the given order when none is set explicitly.
  /// Scaled per order by eps^(1/(order+2)), the balance point of truncation and
  /// round-off for a second-order stencil.
  double default_fd_step(int order) const {
    const double eps = std::numeric_limits<double>::epsilon();
    return domain_.length() * std::pow(eps, 1.0 / (order + 2));
  }

  /// order-th derivative (0..3) at parameter t.
  Vec3 eval(double t, int order = 0) const {
    if (order < 0 || order > 3) fail(ErrorKind::UnsupportedOrder, "derivative order must be in 0..3");
    t = checked_param(t);
    if (order > 0 && finite_difference_) return eval_fd(t, order);
    return eval_exact(t, order);
  }

  Vec3 position(double t) const { return eval(t, 0); }

 private:
  ParamCurve(Interval domain, Shape shape) : domain_(domain), shape_(std::move(shape)) {
    if (!(domain_.lo < domain_.hi) || !std::isfinite(domain_.lo) || !std::isfinite(domain_.hi)) {
      fail(ErrorKind::InvalidField, "domain must satisfy lo < hi");
    }
  }

  double checked_param(double t) const {
    const double slack = 1e-12 * std::max(1.0, std::max(std::fabs(domain_.lo), std::fabs(domain_.hi)));
    if (!(t >= domain_.lo - slack && t <= domain_.hi + slack)) {
      fail(ErrorKind::OutOfDomain, "t = " + std::to_string(t) + " outside [" + std::to_string(domain_.lo) +
                                       ", " + std::to_string(domain_.hi) + "]");
    }
    return std::clamp(t, domain_.lo, domain_.hi);
  }

  Vec3 eval_exact(double t, int order) const;
  Vec3 eval_fd(double t, int order) const;

  Interval domain_;
  Shape shape_;
  bool finite_difference_ = false;
  std::optional<double> fd_step_;
};

/// Cumulative arc length of a regular curve tabulated on a uniform grid, with
/// an inverse (length -> parameter) refined by safeguarded Newton steps.
class ArcLengthMap {
 public:
  ArcLengthMap(ParamCurve source, std::size_t cells, const Tolerances& tol = {})
      : source_(std::move(source)), knots_(uniform_grid(source_.domain(), cells + 1)) {
    if (cells < 1) fail(ErrorKind::InvalidArgument, "arc-length table needs at least one cell");
    for (double t : knots_) {
      if (speed(t) <= tol.speed) {
        fail(ErrorKind::ZeroSpeed, "curve speed vanishes at t = " + std::to_string(t));
      }
    }
    cumulative_.assign(knots_.size(), 0.0);
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      cumulative_[i] = cumulative_[i - 1] + segment(knots_[i - 1], knots_[i]);
    }
    for (std::size_t i = 1; i < cumulative_.size(); ++i) {
      if (!(cumulative_[i] > cumulative_[i - 1])) {
        fail(ErrorKind::ZeroSpeed, "cumulative arc length is not strictly increasing");
      }
    }
  }

  const ParamCurve& source() const { return source_; }
  std::size_t cells() const { return knots_.size() - 1; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  double total_length() const { return cumulative_.back(); }

  double speed(double t) const { return norm(source_.eval(t, 1)); }

  /// Arc length from the start of the domain to t.
  double length_at(double t) const {
    const std::size_t k = cell_of_param(t);
    return cumulative_[k] + segment(knots_[k], t);
  }

  /// Parameter t with length_at(t) == s.
  double param_at(double s) const {
    s = std::clamp(s, 0.0, total_length());
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    std::size_t k = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    k = std::min(k, cells() - 1);
    double lo = knots_[k];
    double hi = knots_[k + 1];
    const double target = s - cumulative_[k];
    const double width = cumulative_[k + 1] - cumulative_[k];
    double t = lo + (hi - lo) * (target / width);
    for (int iter = 0; iter < 60; ++iter) {
      const double residual = segment(knots_[k], t) - target;
      if (residual > 0) hi = t; else lo = t;
      double next = t - residual / speed(t);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::fabs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(t))) {
        return next;
      }
      t = next;
    }
    return t;
  }

 private:
  std::size_t cell_of_param(double t) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t k = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    return std::min(k, cells() - 1);
  }

  double segment(double a, double b) const {
    if (a == b) return 0.0;
    auto f = [this](double u) { return speed(u); };
    const double rough = std::fabs(b - a) * 0.5 * (speed(a) + speed(b));
    return adaptive_simpson(f, a, b, 1e-14 * std::max(rough, 1e-300), 20);
  }

  ParamCurve source_;
  std::vector<double> knots_;
  std::vector<double> cumulative_;
};

inline ParamCurve ParamCurve::arclength(std::shared_ptr<const ArcLengthMap> map) {
  const double length = map->total_length();
  return ParamCurve(Interval{0.0, length}, ArcLengthShape{std::move(map)});
}

namespace detail {

inline Vec3 polynomial_derivative(const std::array<std::vector<double>, 3>& coeffs, double t, int order) {
  Vec3 out;
  for (int axis = 0; axis < 3; ++axis) {
    const auto& c = coeffs[static_cast<std::size_t>(axis)];
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > static_cast<std::size_t>(order);) {
      double falling = 1.0;
      for (int j = 0; j < order; ++j) falling *= static_cast<double>(i - static_cast<std::size_t>(j));
      acc = acc * t + falling * c[i];
    }
    out[axis] = acc;
  }
  return out;
}

inline Vec3 helix_derivative(const CircularHelixShape& h, double t, int order) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  const double r = h.radius;
  switch (order) {
    case 0: return {r * c, r * s, h.pitch * t};
    case 1: return {-r * s, r * c, h.pitch};
    case 2: return {-r * c, -r * s, 0.0};
    default: return {r * s, -r * c, 0.0};
  }
}

/// Derivatives of base(t(s)) where t(s) inverts the arc length (chain rule).
inline Vec3 arclength_derivative(const ArcLengthMap& map, double s, int order) {
  const ParamCurve& base = map.source();
  const double t = map.param_at(s);
  if (order == 0) return base.eval(t, 0);
  const Vec3 d1 = base.eval(t, 1);
  const double v = norm(d1);
  const double t1 = 1.0 / v;
  if (order == 1) return d1 * t1;
  const Vec3 d2 = base.eval(t, 2);
  const double v_t = dot(d1, d2) / v;
  const double t2 = -v_t / (v * v * v);
  if (order == 2) return d2 * (t1 * t1) + d1 * t2;
  const Vec3 d3 = base.eval(t, 3);
  const double v_tt = (dot(d2, d2) + dot(d1, d3) - v_t * v_t) / v;
  const double t3 = t1 * (-v_tt / (v * v * v) + 3.0 * v_t * v_t / (v * v * v * v));
  return d3 * (t1 * t1 * t1) + d2 * (3.0 * t1 * t2) + d1 * t3;
}

}  // namespace detail

inline Vec3 ParamCurve::eval_exact(double t, int order) const {
  struct Visitor {
    double t;
    int order;
    Vec3 operator()(const PolynomialShape& p) const { return detail::polynomial_derivative(p.coeffs, t, order); }
    Vec3 operator()(const CircularHelixShape& h) const { return detail::helix_derivative(h, t, order); }
    Vec3 operator()(const PolylineShape& p) const { return p.spline->eval(t, order); }
    Vec3 operator()(const LiftedShape& l) const {
      const double st = std::sin(l.spec.theta);
      const double ct = std::cos(l.spec.theta);
      const Vec3 b = l.base->eval(t, order);
      if (order == 0) return l.spec.offset + st * b + l.axis * ((t - l.spec.s0) * ct);
      if (order == 1) return st * b + l.axis * ct;
      return st * b;
    }
    Vec3 operator()(const ArcLengthShape& a) const { return detail::arclength_derivative(*a.map, t, order); }
  };
  return std::visit(Visitor{t, order}, shape_);
}

inline Vec3 ParamCurve::eval_fd(double t, int order) const {
  const double h = fd_step_.value_or(default_fd_step(order));
  const int reach = order == 3 ? 2 : 1;
  auto f = [this](double u) { return eval_exact(std::clamp(u, domain_.lo, domain_.hi), 0); };
  if (t - reach * h >= domain_.lo && t + reach * h <= domain_.hi) {
    switch (order) {
      case 1: return (f(t + h) - f(t - h)) / (2.0 * h);
      case 2: return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
      default: return (f(t + 2 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2 * h)) / (2.0 * h * h * h);
    }
  }
  // One-sided second-order stencils pointing into the domain.
  const double g = (t - domain_.lo < domain_.hi - t) ? h : -h;
  if (t + (order + 1) * g < domain_.lo || t + (order + 1) * g > domain_.hi) {
    fail(ErrorKind::StencilOutOfDomain, "finite-difference stencil wider than the domain");
  }
  switch (order) {
    case 1: return (-3.0 * f(t) + 4.0 * f(t + g) - f(t + 2 * g)) / (2.0 * g);
    case 2: return (2.0 * f(t) - 5.0 * f(t + g) + 4.0 * f(t + 2 * g) - f(t + 3 * g)) / (g * g);
    default:
      return (-5.0 * f(t) + 18.0 * f(t + g) - 24.0 * f(t + 2 * g) + 14.0 * f(t + 3 * g) - 3.0 * f(t + 4 * g)) /
             (2.0 * g * g * g);
  }
}

}  // namespace helixlift
