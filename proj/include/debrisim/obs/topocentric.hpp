#pragma once

#include "debrisim/astro/elements.hpp"
#include "debrisim/astro/station.hpp"

namespace debrisim {

/// Apparent angles/rates of an object as seen from a station, plus the
/// geometry needed to invert them back into an inertial state.
struct TopocentricView {
    double ra = 0.0;          // rad
    double dec = 0.0;         // rad
    double ra_dot = 0.0;      // rad/s
    double dec_dot = 0.0;     // rad/s
    double range = 0.0;       // km
    double range_rate = 0.0;  // km/s
    double elevation = 0.0;   // rad above local horizon
    double proper_motion = 0.0;  // rad/s, sqrt(dec_dot^2 + ra_dot^2 cos^2 dec)
};

TopocentricView topocentric_view(const CartesianState& object, const CartesianState& station);
TopocentricView topocentric_view(const CartesianState& object, const Station& station,
                                 const Epoch& t);

/// Inverse of topocentric_view: inertial state from angles/rates plus
/// (range, range rate) and the station state.
CartesianState state_from_view(double ra, double dec, double ra_dot, double dec_dot,
                               double range, double range_rate, const CartesianState& station);

/// Unit line-of-sight vector and its partials.
Vec3 radec_unit(double ra, double dec);
Vec3 radec_dalpha(double ra, double dec);   // d rho_hat / d alpha
Vec3 radec_ddelta(double ra, double dec);   // d rho_hat / d delta

/// True iff r is inside the cylindrical Earth shadow for Sun direction s.
bool in_earth_shadow(const Vec3& r, const Vec3& sun_dir);

/// Elevation of the Sun above the station horizon (rad).
double solar_elevation(const Station& sta, const Epoch& t);

/// True iff the Sun is below sun_elevation_limit (default -12 deg) at the station.
bool station_dark(const Station& sta, const Epoch& t, double sun_elevation_limit_rad = -12.0 * kRadPerDeg);

/// Sun-object-observer angle, in [0, pi].
double phase_angle(const Vec3& object_pos, const Vec3& station_pos, const Vec3& sun_dir);

}  // namespace debrisim
