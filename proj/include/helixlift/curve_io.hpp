#pragma once

#include <memory>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "helixlift/lift.hpp"

namespace helixlift {

// Curve-spec documents (JSON):
//   kind: "polynomial" | "circular_helix" | "polyline" | "lifted" | "arclength"
//   domain: [lo, hi]
//   polynomial:     coeffs  = three ascending-degree coefficient lists
//   circular_helix: radius > 0, pitch
//   polyline:       points  = list of [x, y, z], knots = ascending reals
//   lifted:         base (nested spec), theta, s0, axis_mode, [axis], [offset]
//   arclength:      base (nested spec), cells
//   derivatives (optional): {"scheme": "finite_difference", "step": h}

namespace detail {

using nlohmann::json;

inline json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

inline const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) fail(ErrorKind::InvalidField, std::string("missing field '") + key + "'");
  return doc.at(key);
}

inline double as_number(const json& v, const char* what) {
  if (!v.is_number()) fail(ErrorKind::InvalidField, std::string(what) + " must be a number");
  return v.get<double>();
}

inline Vec3 as_vec3(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 3) fail(ErrorKind::InvalidField, std::string(what) + " must be a 3-vector");
  return {as_number(v[0], what), as_number(v[1], what), as_number(v[2], what)};
}

inline std::vector<double> as_numbers(const json& v, const char* what) {
  if (!v.is_array()) fail(ErrorKind::InvalidField, std::string(what) + " must be a list of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_number(x, what));
  return out;
}

inline Interval as_interval(const json& v) {
  const auto xs = as_numbers(v, "domain");
  if (xs.size() != 2) fail(ErrorKind::InvalidField, "domain must be [lo, hi]");
  if (!(xs[0] < xs[1])) fail(ErrorKind::InvalidField, "domain must satisfy lo < hi");
  return {xs[0], xs[1]};
}

inline json curve_to_json(const ParamCurve& curve);

inline json shape_to_json(const ParamCurve& curve) {
  json doc;
  doc["kind"] = std::string(to_string(curve.kind()));
  doc["domain"] = json::array({curve.domain().lo, curve.domain().hi});
  struct Visitor {
    json& doc;
    void operator()(const PolynomialShape& p) const {
      doc["coeffs"] = json::array({p.coeffs[0], p.coeffs[1], p.coeffs[2]});
    }
    void operator()(const CircularHelixShape& h) const {
      doc["radius"] = h.radius;
      doc["pitch"] = h.pitch;
    }
    void operator()(const PolylineShape& p) const {
      json pts = json::array();
      for (const Vec3& v : p.points) pts.push_back(vec_to_json(v));
      doc["points"] = std::move(pts);
      doc["knots"] = p.knots;
    }
    void operator()(const LiftedShape& l) const {
      doc["base"] = curve_to_json(*l.base);
      doc["theta"] = l.spec.theta;
      doc["s0"] = l.spec.s0;
      doc["axis_mode"] = std::string(to_string(l.spec.axis_mode));
      doc["axis"] = vec_to_json(l.axis);
      doc["offset"] = vec_to_json(l.spec.offset);
    }
    void operator()(const ArcLengthShape& a) const {
      doc["base"] = curve_to_json(a.map->source());
      doc["cells"] = a.map->cells();
    }
  };
  std::visit(Visitor{doc}, curve.shape());
  return doc;
}

inline json curve_to_json(const ParamCurve& curve) {
  json doc = shape_to_json(curve);
  if (curve.uses_finite_differences()) {
    json d;
    d["scheme"] = "finite_difference";
    if (curve.fd_step()) d["step"] = *curve.fd_step();
    doc["derivatives"] = std::move(d);
  }
  return doc;
}

inline ParamCurve curve_from_json(const json& doc, int depth = 0) {
  if (depth > 16) fail(ErrorKind::InvalidField, "curve specs nest too deeply");
  if (!doc.is_object()) fail(ErrorKind::ParseError, "curve spec must be an object");
  const json& kind_field = require(doc, "kind");
  if (!kind_field.is_string()) fail(ErrorKind::InvalidField, "kind must be a string");
  const std::string kind = kind_field.get<std::string>();

  auto parse_shape = [&]() -> ParamCurve {
    if (kind == "polynomial") {
      const json& c = require(doc, "coeffs");
      if (!c.is_array() || c.size() != 3) fail(ErrorKind::InvalidField, "coeffs must hold three lists");
      return ParamCurve::polynomial({as_numbers(c[0], "coeffs"), as_numbers(c[1], "coeffs"), as_numbers(c[2], "coeffs")},
                                    as_interval(require(doc, "domain")));
    }
    if (kind == "circular_helix") {
      return ParamCurve::circular_helix(as_number(require(doc, "radius"), "radius"),
                                        as_number(require(doc, "pitch"), "pitch"), as_interval(require(doc, "domain")));
    }
    if (kind == "polyline") {
      const json& pts = require(doc, "points");
      if (!pts.is_array()) fail(ErrorKind::InvalidField, "points must be a list of 3-vectors");
      std::vector<Vec3> points;
      for (const auto& p : pts) points.push_back(as_vec3(p, "points"));
      std::optional<Interval> domain;
      if (doc.contains("domain")) domain = as_interval(doc.at("domain"));
      return ParamCurve::polyline(std::move(points), as_numbers(require(doc, "knots"), "knots"), domain);
    }
    if (kind == "lifted") {
      const ParamCurve base = curve_from_json(require(doc, "base"), depth + 1);
      LiftSpec spec;
      spec.theta = as_number(require(doc, "theta"), "theta");
      spec.s0 = doc.contains("s0") ? as_number(doc.at("s0"), "s0") : 0.0;
      if (doc.contains("offset")) spec.offset = as_vec3(doc.at("offset"), "offset");
      const json& mode = require(doc, "axis_mode");
      if (!mode.is_string()) fail(ErrorKind::InvalidField, "axis_mode must be a string");
      spec.axis_mode = axis_mode_from_string(mode.get<std::string>());
      if (doc.contains("axis")) spec.axis = as_vec3(doc.at("axis"), "axis");
      if (!(spec.theta >= 0.0 && spec.theta <= std::numbers::pi / 2)) {
        fail(ErrorKind::InvalidField, "theta must lie in [0, pi/2]");
      }
      const Vec3 axis = spec.axis ? *spec.axis : resolve_lift_axis(base, spec, 256);
      spec.axis = axis;
      if (doc.contains("domain") && !(as_interval(doc.at("domain")) == base.domain())) {
        fail(ErrorKind::InvalidField, "lifted domain must equal the base domain");
      }
      return ParamCurve::lifted(base, spec, axis);
    }
    if (kind == "arclength") {
      const ParamCurve base = curve_from_json(require(doc, "base"), depth + 1);
      const json& cells = require(doc, "cells");
      if (!cells.is_number_integer() || cells.get<long long>() < 1) {
        fail(ErrorKind::InvalidField, "cells must be a positive integer");
      }
      return reparam_by_arclength(base, cells.get<std::size_t>());
    }
    fail(ErrorKind::UnknownKind, "unknown curve kind '" + kind + "'");
  };

  ParamCurve curve = parse_shape();
  if (doc.contains("derivatives")) {
    const json& d = doc.at("derivatives");
    const json& scheme = require(d, "scheme");
    if (scheme == "finite_difference") {
      std::optional<double> step;
      if (d.contains("step")) step = as_number(d.at("step"), "step");
      curve = curve.with_finite_differences(step);
    } else if (scheme != "exact") {
      fail(ErrorKind::InvalidField, "derivatives.scheme must be 'exact' or 'finite_difference'");
    }
  }
  return curve;
}

}  // namespace detail

inline nlohmann::json curve_to_json(const ParamCurve& curve) { return detail::curve_to_json(curve); }

inline std::string serialize_curve(const ParamCurve& curve) { return detail::curve_to_json(curve).dump(2) + "\n"; }

inline ParamCurve parse_curve_spec(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  return detail::curve_from_json(doc);
}

}  // namespace helixlift
