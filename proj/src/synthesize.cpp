#include "debrisim/obs/synthesize.hpp"

#include <cmath>

#include "debrisim/astro/sun.hpp"

namespace debrisim {

const char* detection_failure_name(DetectionFailure f) {
    switch (f) {
        case DetectionFailure::None: return "none";
        case DetectionFailure::Elevation: return "elevation";
        case DetectionFailure::Shadow: return "shadow";
        case DetectionFailure::Daylight: return "daylight";
        case DetectionFailure::Clouds: return "clouds";
        case DetectionFailure::OutOfField: return "out_of_field";
        case DetectionFailure::SnrTooLow: return "snr";
    }
    return "?";
}

TopocentricView apparent_view(const CartesianState& object_at_t, const CartesianState& station) {
    CartesianState apparent = object_at_t;
    double range = (object_at_t.r - station.r).norm();
    for (int i = 0; i < 2; ++i) {
        apparent.r = object_at_t.r - (range / kEarth.light_speed) * object_at_t.v;
        range = (apparent.r - station.r).norm();
    }
    return topocentric_view(apparent, station);
}

std::uint64_t object_key_hash(const std::string& id) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : id) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

long night_index(const Station& sta, const Epoch& t) {
    return static_cast<long>(std::floor(t.days + sta.lon / kTwoPi));
}

bool night_is_clear(const Station& sta, int station_index, const Epoch& t,
                    const RandomStream& root) {
    auto wx = root.fork("weather", static_cast<std::uint64_t>(station_index),
                        static_cast<std::uint64_t>(night_index(sta, t) + (1L << 40)));
    return wx.uniform() >= sta.cloud_prob;
}

DetectionOutcome synthesize_from_state(const CartesianState& object_at_t, double diameter_m,
                                       std::uint64_t object_key, const Station& station,
                                       int station_index, const Epoch& t, ObsMode mode,
                                       const RandomStream& root, const InstrumentModel& inst,
                                       const PhotometryModel& ph, const VisibilityLimits& lim,
                                       double pointing_error_rad) {
    DetectionOutcome out;
    const CartesianState sta_state = geodetic_to_inertial(station, t);
    out.view = apparent_view(object_at_t, sta_state);

    if (out.view.elevation < lim.min_elevation) {
        out.reason = DetectionFailure::Elevation;
        return out;
    }
    const Vec3 sun = sun_direction(t);
    if (in_earth_shadow(object_at_t.r, sun)) {
        out.reason = DetectionFailure::Shadow;
        return out;
    }
    if (!station_dark(station, t, lim.dark_sun_elevation)) {
        out.reason = DetectionFailure::Daylight;
        return out;
    }
    if (!night_is_clear(station, station_index, t, root)) {
        out.reason = DetectionFailure::Clouds;
        return out;
    }
    if (mode == ObsMode::Tasking && pointing_error_rad > inst.fov_halfwidth_rad()) {
        out.reason = DetectionFailure::OutOfField;
        return out;
    }

    out.phase = phase_angle(object_at_t.r, sta_state.r, sun);
    const double H = absolute_magnitude(diameter_m, ph);
    out.apparent_mag = apparent_magnitude(H, out.view.range, out.phase, ph);
    const double omega_img =
        mode == ObsMode::Tasking ? 0.0 : out.view.proper_motion * kArcsecPerRad;
    out.snr = snr_trail(out.apparent_mag, omega_img, inst);
    if (out.snr.snr_trail < inst.snr_threshold) {
        out.reason = DetectionFailure::SnrTooLow;
        return out;
    }

    const AstrometricSigma sig = astrometric_sigma(out.snr, inst);
    out.sigma_arcsec = sig.sigma_arcsec;
    const double sigma_rad = sig.sigma_arcsec / kArcsecPerRad;
    const double sigma_rate = std::sqrt(2.0) * sigma_rad / inst.exposure_s;

    auto noise = root.fork("measure", object_key,
                           static_cast<std::uint64_t>(std::llround(t.days * 86400.0e3)));
    Attributable a;
    a.ra = wrap_two_pi(out.view.ra + sigma_rad * noise.normal());
    a.dec = out.view.dec + sigma_rad * noise.normal();
    a.ra_dot = out.view.ra_dot + sigma_rate * noise.normal();
    a.dec_dot = out.view.dec_dot + sigma_rate * noise.normal();
    a.epoch = t;
    a.station = station_index;
    a.sigma = Eigen::Vector4d(sigma_rad, sigma_rad, sigma_rate, sigma_rate);
    a.mode = mode;

    out.detected = true;
    out.attributable = a;
    return out;
}

}  // namespace debrisim
