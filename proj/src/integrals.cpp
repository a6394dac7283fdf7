#include "debrisim/link/integrals.hpp"

#include <cmath>

namespace debrisim {

IntegralsCoefficients integrals_coefficients(const Attributable& a,
                                             const CartesianState& station_state) {
    IntegralsCoefficients ic;
    ic.station_state = station_state;
    ic.rho_hat = radec_unit(a.ra, a.dec);
    ic.drho_hat_dt =
        a.ra_dot * radec_dalpha(a.ra, a.dec) + a.dec_dot * radec_ddelta(a.ra, a.dec);

    const Vec3& q = station_state.r;
    const Vec3& qd = station_state.v;

    ic.D = q.cross(ic.rho_hat);
    ic.E = ic.rho_hat.cross(ic.drho_hat_dt);
    ic.F = q.cross(ic.drho_hat_dt) + ic.rho_hat.cross(qd);
    ic.G = q.cross(qd);

    ic.c1 = 2.0 * qd.dot(ic.rho_hat);
    ic.c2 = ic.drho_hat_dt.squaredNorm();
    ic.c3 = 2.0 * qd.dot(ic.drho_hat_dt);
    ic.c4 = qd.squaredNorm();
    ic.c5 = 2.0 * q.dot(ic.rho_hat);
    ic.c6 = q.squaredNorm();
    return ic;
}

Vec3 angular_momentum(const IntegralsCoefficients& ic, double rho, double rho_dot) {
    return ic.D * rho_dot + ic.E * (rho * rho) + ic.F * rho + ic.G;
}

double two_body_energy(const IntegralsCoefficients& ic, double rho, double rho_dot) {
    const double v2 = rho_dot * rho_dot + ic.c1 * rho_dot + ic.c2 * rho * rho + ic.c3 * rho + ic.c4;
    const double r = std::sqrt(rho * rho + ic.c5 * rho + ic.c6);
    return 0.5 * v2 - kEarth.mu / r;
}

CartesianState state_from_ranges(const IntegralsCoefficients& ic, double rho, double rho_dot) {
    CartesianState s;
    s.r = ic.station_state.r + rho * ic.rho_hat;
    s.v = ic.station_state.v + rho_dot * ic.rho_hat + rho * ic.drho_hat_dt;
    s.epoch = ic.station_state.epoch;
    return s;
}

}  // namespace debrisim
