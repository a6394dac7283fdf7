#pragma once

#include "debrisim/astro/constants.hpp"

namespace debrisim {

enum class PhaseLaw { Linear };

/// Optical properties of the target population and the phase law.
struct PhotometryModel {
    double albedo = 0.1;
    PhaseLaw law = PhaseLaw::Linear;
    /// Slope of the linear phase penalty (mag/deg); default pins the
    /// penalty at 90 deg phase to 3.2 mag.
    double phase_slope = 3.2 / 90.0;
};

/// Phase penalty Delta_m(phi) >= 0, Delta_m(0) = 0, nondecreasing.
double phase_correction(double phase_rad, const PhotometryModel& ph);

/// Absolute magnitude from diameter (m): H = 33 - 5 log10 d at albedo 0.1,
/// rescaled by -2.5 log10(albedo/0.1) otherwise.
double absolute_magnitude(double diameter_m, const PhotometryModel& ph);

/// Apparent magnitude at range (km) and phase angle; heliocentric distance
/// fixed at 1 AU.
double apparent_magnitude(double H, double range_km, double phase_rad,
                          const PhotometryModel& ph);

}  // namespace debrisim
