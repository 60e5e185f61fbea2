#pragma once

#include <cstddef>
#include <limits>

#include "helixlift/curve.hpp"

namespace helixlift {

struct RegularityReport {
  double min_speed = 0.0;       ///< min |a'| over the grid
  double min_speed_at = 0.0;    ///< parameter where min_speed occurs
  double min_cross_norm = 0.0;  ///< min |a' x a''| over the grid
  bool is_regular = false;
  bool is_twisted = false;
  std::size_t grid_size = 0;
};

/// Minima of |a'| and |a' x a''| over a uniform grid.
inline RegularityReport regularity_check(const ParamCurve& curve, std::size_t grid_size, const Tolerances& tol = {}) {
  tol.validate();
  RegularityReport report;
  report.grid_size = grid_size;
  report.min_speed = std::numeric_limits<double>::infinity();
  report.min_cross_norm = std::numeric_limits<double>::infinity();
  for (double t : uniform_grid(curve.domain(), grid_size)) {
    const Vec3 d1 = curve.eval(t, 1);
    const Vec3 d2 = curve.eval(t, 2);
    const double speed = norm(d1);
    if (speed < report.min_speed) {
      report.min_speed = speed;
      report.min_speed_at = t;
    }
    report.min_cross_norm = std::fmin(report.min_cross_norm, norm(cross(d1, d2)));
  }
  report.is_regular = report.min_speed > tol.speed;
  report.is_twisted = report.min_cross_norm > tol.cross;
  return report;
}

}  // namespace helixlift
