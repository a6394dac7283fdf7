#pragma once

#include "debrisim/obs/instrument.hpp"

namespace debrisim {

/// Signal/noise bookkeeping for one exposure of a (possibly trailed) source.
struct SnrBudget {
    double signal = 0.0;          // total e- collected from the object
    double noise_variance = 0.0;  // per-pixel variance N, e-^2
    int trail_pixels = 1;         // T
    double snr_star = 0.0;        // S / sqrt(S + N)
    double snr_pixel = 0.0;       // (S/T) / sqrt(S/T + N)
    double snr_trail = 0.0;       // S / sqrt(S + N T)
    double end_variance = 0.0;    // Z = (S/N)_pixel^-2, pixels^2
};

/// omega_arcsec_s is the angular rate relative to the image frame
/// (0 in tasking mode: the telescope tracks the object).
SnrBudget snr_trail(double apparent_mag, double omega_arcsec_s, const InstrumentModel& inst);

struct AstrometricSigma {
    double sigma_arcsec = 0.0;
    bool degraded = false;  // > 2 arcsec: endangers orbit quality
};

/// Per-endpoint astrometric error: floor when the pixel S/N is good,
/// end-finding error pixel_scale/(S/N)_pixel otherwise.
AstrometricSigma astrometric_sigma(const SnrBudget& budget, const InstrumentModel& inst);

}  // namespace debrisim
