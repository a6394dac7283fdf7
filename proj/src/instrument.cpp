#include "debrisim/obs/instrument.hpp"

#include <cmath>

namespace debrisim {

double InstrumentModel::fov_halfwidth_rad() const {
    return 0.5 * std::sqrt(fov_deg2) * kRadPerDeg;
}

double InstrumentModel::pixel_noise_variance() const {
    return read_noise * read_noise + (dark_current + sky_rate) * exposure_s;
}

InstrumentModel instrument_from_config(const Config& cfg) {
    InstrumentModel m;
    m.aperture_m = cfg.get_double("instrument", "aperture_m", m.aperture_m);
    m.fov_deg2 = cfg.get_double("instrument", "fov_deg2", m.fov_deg2);
    m.pixel_arcsec = cfg.get_double("instrument", "pixel_arcsec", m.pixel_arcsec);
    m.exposure_s = cfg.get_double("instrument", "exposure_s", m.exposure_s);
    m.cadence_s = cfg.get_double("instrument", "cadence_s", m.cadence_s);
    m.read_noise = cfg.get_double("instrument", "read_noise", m.read_noise);
    m.dark_current = cfg.get_double("instrument", "dark_current", m.dark_current);
    m.sky_rate = cfg.get_double("instrument", "sky_rate", m.sky_rate);
    m.zero_point = cfg.get_double("instrument", "zero_point", m.zero_point);
    m.snr_threshold = cfg.get_double("instrument", "snr_threshold", m.snr_threshold);
    m.sigma_floor_arcsec = cfg.get_double("instrument", "sigma_floor_arcsec", m.sigma_floor_arcsec);
    m.max_rate_arcsec_s = cfg.get_double("instrument", "max_rate_arcsec_s", m.max_rate_arcsec_s);
    return m;
}

PhotometryModel photometry_from_config(const Config& cfg) {
    PhotometryModel ph;
    ph.albedo = cfg.get_double("photometry", "albedo", ph.albedo);
    ph.phase_slope = cfg.get_double("photometry", "phase_slope", ph.phase_slope);
    return ph;
}

}  // namespace debrisim
