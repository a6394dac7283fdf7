#include "debrisim/prop/secular.hpp"

#include <cmath>

namespace debrisim {

SecularRates secular_rates(const KeplerianElements& el) {
    SecularRates out;
    const double n = el.mean_motion();
    const double p = 1.0 - el.e * el.e;
    const double ra2 = (kEarth.earth_radius / el.a) * (kEarth.earth_radius / el.a);
    const double ci = std::cos(el.inc);
    const double si2 = std::sin(el.inc) * std::sin(el.inc);

    out.n = n;
    out.l_dot = n - 0.75 * n * ra2 * kEarth.j2 * (1.0 - 3.0 * ci * ci) / std::pow(p, 1.5);
    out.argp_dot = 0.75 * n * ra2 * kEarth.j2 * (4.0 - 5.0 * si2) / (p * p);
    out.raan_dot = -1.5 * n * ra2 * kEarth.j2 * ci / (p * p);

    if (std::abs(ci) < 1e-9) {
        out.coeffs_valid = false;  // polar orbit: node rate vanishes
        out.c_omega = 0.0;
        out.c_ell = 0.0;
    } else {
        out.c_omega = -(4.0 - 5.0 * si2) / (2.0 * ci);
        out.c_ell = (1.0 - 3.0 * ci * ci) * std::sqrt(p) / (2.0 * ci);
    }
    return out;
}

KeplerianElements propagate_secular(const KeplerianElements& el, double dt_seconds) {
    const SecularRates rates = secular_rates(el);
    KeplerianElements out = el;
    out.mean_anom = wrap_two_pi(el.mean_anom + rates.l_dot * dt_seconds);
    out.argp = wrap_two_pi(el.argp + rates.argp_dot * dt_seconds);
    out.raan = wrap_two_pi(el.raan + rates.raan_dot * dt_seconds);
    out.epoch = el.epoch.plus_seconds(dt_seconds);
    return out;
}

CartesianState secular_state_at(const KeplerianElements& el, const Epoch& t) {
    return elements_to_state(propagate_secular(el, t.seconds_from(el.epoch)));
}

}  // namespace debrisim
