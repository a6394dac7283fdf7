#pragma once

#include <compare>

namespace debrisim {

/// Instant on a single uniform time scale, stored as days from the
/// reference epoch (a J2000-like noon). No leap seconds, no UT1/TT split.
struct Epoch {
    double days = 0.0;

    constexpr auto operator<=>(const Epoch&) const = default;

    Epoch plus_seconds(double s) const { return Epoch{days + s / 86400.0}; }
    Epoch plus_days(double d) const { return Epoch{days + d}; }
    double seconds_from(const Epoch& other) const { return (days - other.days) * 86400.0; }
};

/// Epoch from a civil calendar date on the uniform scale.
Epoch epoch_from_civil(int year, int month, int day, double seconds_of_day = 0.0);

/// Earth rotation angle (rad, [0,2pi)) at the given epoch.
double earth_rotation_angle(const Epoch& t);

/// Epoch near the reference at which the Earth rotation angle is zero.
Epoch epoch_with_zero_rotation();

}  // namespace debrisim
