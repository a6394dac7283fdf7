#pragma once

#include "debrisim/astro/constants.hpp"
#include "debrisim/astro/epoch.hpp"

namespace debrisim {

/// Unit geocentric Sun direction (equatorial frame) from a low-precision
/// analytic solar ephemeris (error well under 0.05 deg for decades around
/// the reference epoch).
Vec3 sun_direction(const Epoch& t);

}  // namespace debrisim
