#pragma once

#include <string>

#include "debrisim/obs/photometry.hpp"
#include "debrisim/util/config.hpp"

namespace debrisim {

/// Telescope + camera + noise budget. Counts are photo-electrons. The noise
/// values are calibration constants: sky background dominates, and a 10 cm
/// object at 1400 km range and moderate phase rides just above the survey
/// detection limit (the claimed 8-10 cm capability of a 1 m aperture).
struct InstrumentModel {
    double aperture_m = 1.0;
    double fov_deg2 = 45.0;
    double pixel_arcsec = 1.5;
    double exposure_s = 1.0;
    double cadence_s = 3.0;
    double read_noise = 0.7;        // e-/pixel rms
    double dark_current = 0.5;      // e-/pixel/s
    double sky_rate = 10.0;         // e-/pixel/s
    double zero_point = 1.5e8;      // e-/s at apparent magnitude 0
    double snr_threshold = 6.0;     // on (S/N)_trail
    double sigma_floor_arcsec = 0.4;
    double max_rate_arcsec_s = 2000.0;

    double fov_halfwidth_rad() const;   // half side of the square field
    double pixel_noise_variance() const;  // RN^2 + (D + R_sky) t_exp
};

InstrumentModel instrument_from_config(const Config& cfg);
PhotometryModel photometry_from_config(const Config& cfg);

}  // namespace debrisim
