#include "debrisim/obs/topocentric.hpp"

#include <cmath>

#include "debrisim/astro/sun.hpp"

namespace debrisim {

Vec3 radec_unit(double ra, double dec) {
    return Vec3(std::cos(ra) * std::cos(dec), std::sin(ra) * std::cos(dec), std::sin(dec));
}

Vec3 radec_dalpha(double ra, double dec) {
    return Vec3(-std::sin(ra) * std::cos(dec), std::cos(ra) * std::cos(dec), 0.0);
}

Vec3 radec_ddelta(double ra, double dec) {
    return Vec3(-std::cos(ra) * std::sin(dec), -std::sin(ra) * std::sin(dec), std::cos(dec));
}

TopocentricView topocentric_view(const CartesianState& object, const CartesianState& station) {
    const Vec3 rel = object.r - station.r;
    const Vec3 rel_dot = object.v - station.v;

    TopocentricView v;
    v.range = rel.norm();
    const Vec3 rho_hat = rel / v.range;
    v.range_rate = rho_hat.dot(rel_dot);
    v.ra = wrap_two_pi(std::atan2(rel.y(), rel.x()));
    v.dec = std::asin(std::clamp(rho_hat.z(), -1.0, 1.0));

    const Vec3 drho_dt = (rel_dot - v.range_rate * rho_hat) / v.range;  // d rho_hat / dt
    const double cd = std::cos(v.dec);
    v.ra_dot = drho_dt.dot(radec_dalpha(v.ra, v.dec)) / (cd * cd);
    v.dec_dot = drho_dt.dot(radec_ddelta(v.ra, v.dec));
    v.proper_motion = std::sqrt(v.dec_dot * v.dec_dot + v.ra_dot * v.ra_dot * cd * cd);

    const Vec3 zenith = station.r.normalized();
    v.elevation = std::asin(std::clamp(rho_hat.dot(zenith), -1.0, 1.0));
    return v;
}

TopocentricView topocentric_view(const CartesianState& object, const Station& station,
                                 const Epoch& t) {
    return topocentric_view(object, geodetic_to_inertial(station, t));
}

CartesianState state_from_view(double ra, double dec, double ra_dot, double dec_dot,
                               double range, double range_rate, const CartesianState& station) {
    const Vec3 rho_hat = radec_unit(ra, dec);
    const Vec3 drho_dt = ra_dot * radec_dalpha(ra, dec) + dec_dot * radec_ddelta(ra, dec);
    CartesianState s;
    s.r = station.r + range * rho_hat;
    s.v = station.v + range_rate * rho_hat + range * drho_dt;
    s.epoch = station.epoch;
    return s;
}

bool in_earth_shadow(const Vec3& r, const Vec3& sun_dir) {
    const double along = r.dot(sun_dir);
    if (along >= 0.0) return false;
    const Vec3 perp = r - along * sun_dir;
    return perp.norm() < kEarth.earth_radius;
}

double solar_elevation(const Station& sta, const Epoch& t) {
    const CartesianState s = geodetic_to_inertial(sta, t);
    const Vec3 zenith = s.r.normalized();
    return std::asin(std::clamp(sun_direction(t).dot(zenith), -1.0, 1.0));
}

bool station_dark(const Station& sta, const Epoch& t, double sun_elevation_limit_rad) {
    return solar_elevation(sta, t) < sun_elevation_limit_rad;
}

double phase_angle(const Vec3& object_pos, const Vec3& station_pos, const Vec3& sun_dir) {
    const Vec3 to_observer = (station_pos - object_pos).normalized();
    return std::acos(std::clamp(sun_dir.dot(to_observer), -1.0, 1.0));
}

}  // namespace debrisim
