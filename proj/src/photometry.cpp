#include "debrisim/obs/photometry.hpp"

#include <cmath>
#include <stdexcept>

namespace debrisim {

double phase_correction(double phase_rad, const PhotometryModel& ph) {
    switch (ph.law) {
        case PhaseLaw::Linear:
            return ph.phase_slope * phase_rad * kDegPerRad;
    }
    return 0.0;
}

double absolute_magnitude(double diameter_m, const PhotometryModel& ph) {
    if (diameter_m <= 0.0) throw std::invalid_argument("absolute_magnitude: diameter must be > 0");
    double H = 33.0 - 5.0 * std::log10(diameter_m);
    if (ph.albedo != 0.1) H -= 2.5 * std::log10(ph.albedo / 0.1);
    return H;
}

double apparent_magnitude(double H, double range_km, double phase_rad,
                          const PhotometryModel& ph) {
    if (range_km <= 0.0) throw std::invalid_argument("apparent_magnitude: range must be > 0");
    return H + 5.0 * std::log10(range_km / kEarth.au_km) + phase_correction(phase_rad, ph);
}

}  // namespace debrisim
