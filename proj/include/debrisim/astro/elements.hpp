#pragma once

#include <stdexcept>

#include "debrisim/astro/constants.hpp"
#include "debrisim/astro/epoch.hpp"

namespace debrisim {

/// Inertial equatorial position/velocity (km, km/s).
struct CartesianState {
    Vec3 r = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    Epoch epoch;
};

/// Classical elements: a (km), e, inclination/node/perigee/mean anomaly (rad).
struct KeplerianElements {
    double a = 0.0;
    double e = 0.0;
    double inc = 0.0;
    double raan = 0.0;
    double argp = 0.0;
    double mean_anom = 0.0;
    Epoch epoch;

    double perigee_radius() const { return a * (1.0 - e); }
    double apogee_radius() const { return a * (1.0 + e); }
    double perigee_altitude() const { return perigee_radius() - kEarth.earth_radius; }
    double mean_motion() const;  // rad/s
};

/// Delaunay variables: angles (rad) and actions L, G, Z (km^2/s).
struct DelaunayElements {
    double l = 0.0;   // mean anomaly
    double g = 0.0;   // argument of perigee
    double h = 0.0;   // longitude of node
    double L = 0.0;   // sqrt(mu a)
    double G = 0.0;   // L sqrt(1-e^2)
    double Z = 0.0;   // G cos I
};

struct ConversionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solves Kepler's equation E - e sin E = M. Guarded Newton/bisection,
/// |residual| < 1e-13 for e in [0, 1).
double solve_kepler(double mean_anom, double e);

CartesianState elements_to_state(const KeplerianElements& el);

/// Throws ConversionError for near-parabolic (e >= 1 - 1e-6) or
/// near-rectilinear states.
KeplerianElements state_to_elements(const CartesianState& s);

DelaunayElements delaunay_from_keplerian(const KeplerianElements& el);
KeplerianElements keplerian_from_delaunay(const DelaunayElements& d, const Epoch& epoch);

}  // namespace debrisim
