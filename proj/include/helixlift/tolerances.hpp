#pragma once

#include "helixlift/errors.hpp"

namespace helixlift {

/// Numerical thresholds shared by every check in the library.
struct Tolerances {
  double fd_step = 1e-3;       ///< finite-difference step, parameter units
  double vector = 1e-6;        ///< unit-vector / orthonormality checks
  double constancy = 1e-4;     ///< relative deviation allowed for "constant"
  double speed = 1e-9;         ///< below this |a'| counts as zero
  double cross = 1e-9;         ///< below this |a' x a''| counts as zero

  void validate() const {
    if (!(fd_step > 0 && vector > 0 && constancy > 0 && speed > 0 && cross > 0)) {
      fail(ErrorKind::InvalidArgument, "all tolerances must be strictly positive");
    }
  }
};

}  // namespace helixlift
