#pragma once

#include "helixlift/curve.hpp"
#include "helixlift/curve_io.hpp"
#include "helixlift/fixtures.hpp"
#include "helixlift/frenet.hpp"
#include "helixlift/helix.hpp"
#include "helixlift/lift.hpp"
#include "helixlift/regularity.hpp"
#include "helixlift/sampling.hpp"
#include "helixlift/verify.hpp"
