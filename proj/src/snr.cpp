#include "debrisim/obs/snr.hpp"

#include <cmath>

namespace debrisim {

SnrBudget snr_trail(double apparent_mag, double omega_arcsec_s, const InstrumentModel& inst) {
    SnrBudget b;
    b.signal = inst.zero_point * std::pow(10.0, -0.4 * apparent_mag) * inst.exposure_s;
    b.noise_variance = inst.pixel_noise_variance();
    b.trail_pixels = std::max(
        1, static_cast<int>(std::ceil(omega_arcsec_s * inst.exposure_s / inst.pixel_arcsec)));

    const double S = b.signal;
    const double N = b.noise_variance;
    const double T = static_cast<double>(b.trail_pixels);
    b.snr_star = S / std::sqrt(S + N);
    b.snr_pixel = (S / T) / std::sqrt(S / T + N);
    b.snr_trail = S / std::sqrt(S + N * T);
    b.end_variance = 1.0 / (b.snr_pixel * b.snr_pixel);
    return b;
}

AstrometricSigma astrometric_sigma(const SnrBudget& budget, const InstrumentModel& inst) {
    AstrometricSigma out;
    const double end_error = inst.pixel_arcsec * std::sqrt(budget.end_variance);
    out.sigma_arcsec = std::max(inst.sigma_floor_arcsec, end_error);
    out.degraded = out.sigma_arcsec > 2.0;
    return out;
}

}  // namespace debrisim
