#include "debrisim/astro/sun.hpp"

#include <cmath>

namespace debrisim {

// Low-precision solar position (Almanac-style series), good to ~0.01 deg.
Vec3 sun_direction(const Epoch& t) {
    const double n = t.days;
    const double mean_lon = kRadPerDeg * (280.460 + 0.9856474 * n);
    const double mean_anom = kRadPerDeg * (357.528 + 0.9856003 * n);
    const double ecl_lon = mean_lon + kRadPerDeg * (1.915 * std::sin(mean_anom) +
                                                    0.020 * std::sin(2.0 * mean_anom));
    const double eps = kRadPerDeg * (23.439 - 4.0e-7 * n);
    Vec3 dir(std::cos(ecl_lon),
             std::cos(eps) * std::sin(ecl_lon),
             std::sin(eps) * std::sin(ecl_lon));
    return dir.normalized();
}

}  // namespace debrisim
