#pragma once

#include "debrisim/link/attributable.hpp"
#include "debrisim/obs/topocentric.hpp"

namespace debrisim {

/// Coefficients expressing the two-body integrals as functions of (rho,
/// rho_dot) for one attributable: angular momentum
///   c(rho, rho_dot) = D rho_dot + E rho^2 + F rho + G
/// and energy
///   2 E(rho, rho_dot) = rho_dot^2 + c1 rho_dot + c2 rho^2 + c3 rho + c4
///                       - 2 mu / sqrt(rho^2 + c5 rho + c6).
struct IntegralsCoefficients {
    Vec3 D, E, F, G;
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
    Vec3 rho_hat, drho_hat_dt;
    CartesianState station_state;
};

IntegralsCoefficients integrals_coefficients(const Attributable& a,
                                             const CartesianState& station_state);

/// Angular momentum vector for given ranges from the decomposition.
Vec3 angular_momentum(const IntegralsCoefficients& ic, double rho, double rho_dot);
/// Two-body energy for given ranges.
double two_body_energy(const IntegralsCoefficients& ic, double rho, double rho_dot);

/// Inertial state r = q + rho rho_hat, rdot = qdot + rho_dot rho_hat +
/// rho drho_hat/dt, at the attributable epoch.
CartesianState state_from_ranges(const IntegralsCoefficients& ic, double rho, double rho_dot);

}  // namespace debrisim
