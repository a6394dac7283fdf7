#pragma once

#include <optional>
#include <string>

#include "debrisim/link/attributable.hpp"
#include "debrisim/obs/snr.hpp"
#include "debrisim/obs/topocentric.hpp"
#include "debrisim/util/rng.hpp"

namespace debrisim {

enum class DetectionFailure {
    None,
    Elevation,
    Shadow,      // object inside the Earth shadow
    Daylight,    // station not dark
    Clouds,
    OutOfField,  // tasking pointing error beyond the field half-width
    SnrTooLow,
};

const char* detection_failure_name(DetectionFailure f);

struct DetectionOutcome {
    bool detected = false;
    DetectionFailure reason = DetectionFailure::None;
    std::optional<Attributable> attributable;
    // Diagnostics of the attempt.
    TopocentricView view;
    double phase = 0.0;          // rad
    double apparent_mag = 0.0;
    SnrBudget snr;
    double sigma_arcsec = 0.0;
};

struct VisibilityLimits {
    double min_elevation = 15.0 * kRadPerDeg;
    double dark_sun_elevation = -12.0 * kRadPerDeg;
};

/// Apparent view including the light-time shift: the object state is taken
/// at t - range/c (two fixed-point rounds), the station at t.
TopocentricView apparent_view(const CartesianState& object_at_t, const CartesianState& station);

/// Full detection attempt for a truth state already evaluated at the exposure
/// epoch. The weather draw is keyed by (station, local night); measurement
/// noise by (object key, epoch), so synthesis order never changes results.
DetectionOutcome synthesize_from_state(
    const CartesianState& object_at_t, double diameter_m, std::uint64_t object_key,
    const Station& station, int station_index, const Epoch& t, ObsMode mode,
    const RandomStream& root, const InstrumentModel& inst, const PhotometryModel& ph,
    const VisibilityLimits& lim = {}, double pointing_error_rad = 0.0);

std::uint64_t object_key_hash(const std::string& id);

/// Local night counter used for the per-(station, night) weather draw.
long night_index(const Station& sta, const Epoch& t);

/// True iff the (station, night) weather draw comes up clear.
bool night_is_clear(const Station& sta, int station_index, const Epoch& t,
                    const RandomStream& root);

}  // namespace debrisim
