#pragma once

#include "debrisim/astro/elements.hpp"

namespace debrisim {

/// First-order secular rates of the Delaunay angles under the J2 quadrupole.
/// c_omega and c_ell are the perigee/anomaly coefficients per unit node rate;
/// they are undefined for polar orbits (cos I = 0), flagged by coeffs_valid.
struct SecularRates {
    double l_dot = 0.0;     // rad/s, includes the mean motion
    double argp_dot = 0.0;  // rad/s
    double raan_dot = 0.0;  // rad/s
    double n = 0.0;         // two-body mean motion, rad/s
    double c_omega = 0.0;   // argp_dot / raan_dot
    double c_ell = 0.0;     // (l_dot - n) / raan_dot
    bool coeffs_valid = true;
};

SecularRates secular_rates(const KeplerianElements& el);

/// Advances l, omega, Omega linearly at the secular rates; a, e, I fixed.
KeplerianElements propagate_secular(const KeplerianElements& el, double dt_seconds);

/// Cartesian state of the secular trajectory at epoch t.
CartesianState secular_state_at(const KeplerianElements& el, const Epoch& t);

}  // namespace debrisim
