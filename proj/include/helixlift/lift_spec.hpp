#pragma once

#include <optional>
#include <string_view>

#include "helixlift/errors.hpp"
#include "helixlift/vec3.hpp"

namespace helixlift {

/// How the lift obtains its axis vector.
enum class AxisMode {
  unit,           ///< cos(theta) T + sin(theta) B of the base helix, norm 1
  paper_printed,  ///< twice the unit axis, as in the cubic worked example
  explicit_axis,  ///< caller supplied vector, used verbatim
};

constexpr std::string_view to_string(AxisMode mode) {
  switch (mode) {
    case AxisMode::unit: return "unit";
    case AxisMode::paper_printed: return "paper_printed";
    case AxisMode::explicit_axis: return "explicit";
  }
  return "unit";
}

inline AxisMode axis_mode_from_string(std::string_view s) {
  if (s == "unit") return AxisMode::unit;
  if (s == "paper_printed") return AxisMode::paper_printed;
  if (s == "explicit") return AxisMode::explicit_axis;
  fail(ErrorKind::InvalidField, "unknown axis_mode '" + std::string(s) + "'");
}

/// Parameters of the helix lift
///   lifted(s) = offset + sin(theta) base(s) + axis (s - s0) cos(theta).
struct LiftSpec {
  double theta = 0.0;
  double s0 = 0.0;
  Vec3 offset{};
  AxisMode axis_mode = AxisMode::unit;
  std::optional<Vec3> axis;  ///< required for explicit_axis; otherwise a resolved cache

  friend bool operator==(const LiftSpec&, const LiftSpec&) = default;
};

}  // namespace helixlift
