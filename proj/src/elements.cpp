#include "debrisim/astro/elements.hpp"

#include <cmath>

namespace debrisim {

double KeplerianElements::mean_motion() const {
    return std::sqrt(kEarth.mu / (a * a * a));
}

double solve_kepler(double mean_anom, double e) {
    const double M = wrap_pm_pi(mean_anom);
    if (e < 1e-14) return M;

    // Bracket [M-e, M+e] always contains the root of f(E) = E - e sinE - M.
    double lo = M - e, hi = M + e;
    double E = (e > 0.8) ? kPi * (M >= 0 ? 1.0 : -1.0) : M;
    if (E < lo || E > hi) E = 0.5 * (lo + hi);

    for (int it = 0; it < 80; ++it) {
        const double f = E - e * std::sin(E) - M;
        if (std::abs(f) < 1e-14) break;
        if (f > 0.0) hi = E; else lo = E;
        const double fp = 1.0 - e * std::cos(E);
        double step = f / fp;
        double En = E - step;
        if (En <= lo || En >= hi) En = 0.5 * (lo + hi);  // fall back to bisection
        if (En == E) break;
        E = En;
    }
    return E;
}

CartesianState elements_to_state(const KeplerianElements& el) {
    if (el.a <= 0.0 || el.e < 0.0 || el.e >= 1.0)
        throw ConversionError("elements_to_state: requires a > 0 and 0 <= e < 1");

    const double E = solve_kepler(el.mean_anom, el.e);
    const double cE = std::cos(E), sE = std::sin(E);
    const double sq = std::sqrt(1.0 - el.e * el.e);

    // Perifocal coordinates.
    const double xp = el.a * (cE - el.e);
    const double yp = el.a * sq * sE;
    const double r = el.a * (1.0 - el.e * cE);
    const double Edot = std::sqrt(kEarth.mu / (el.a * el.a * el.a)) * el.a / r;
    const double vxp = -el.a * sE * Edot;
    const double vyp = el.a * sq * cE * Edot;

    const double cO = std::cos(el.raan), sO = std::sin(el.raan);
    const double ci = std::cos(el.inc), si = std::sin(el.inc);
    const double cw = std::cos(el.argp), sw = std::sin(el.argp);

    const Vec3 P(cO * cw - sO * sw * ci, sO * cw + cO * sw * ci, sw * si);
    const Vec3 Q(-cO * sw - sO * cw * ci, -sO * sw + cO * cw * ci, cw * si);

    CartesianState s;
    s.r = xp * P + yp * Q;
    s.v = vxp * P + vyp * Q;
    s.epoch = el.epoch;
    return s;
}

KeplerianElements state_to_elements(const CartesianState& s) {
    const double rn = s.r.norm();
    if (rn <= 0.0) throw ConversionError("state_to_elements: zero radius");

    const Vec3 h = s.r.cross(s.v);
    const double hn = h.norm();
    if (hn < 1e-8 * rn * s.v.norm() || hn == 0.0)
        throw ConversionError("state_to_elements: near-rectilinear state");

    const double v2 = s.v.squaredNorm();
    const double energy = 0.5 * v2 - kEarth.mu / rn;
    if (energy >= -1e-12)
        throw ConversionError("state_to_elements: non-elliptic state (energy >= 0)");
    const double a = -kEarth.mu / (2.0 * energy);

    const Vec3 evec = s.v.cross(h) / kEarth.mu - s.r / rn;
    const double e = evec.norm();
    if (e >= 1.0 - 1e-6)
        throw ConversionError("state_to_elements: near-parabolic state");

    KeplerianElements el;
    el.a = a;
    el.e = e;
    el.inc = std::acos(std::clamp(h.z() / hn, -1.0, 1.0));
    el.epoch = s.epoch;

    // Node vector; for equatorial orbits the node defaults to +x.
    Vec3 node(-h.y(), h.x(), 0.0);
    const double nn = node.norm();
    if (nn < 1e-12 * hn) node = Vec3(1.0, 0.0, 0.0);
    else node /= nn;
    el.raan = wrap_two_pi(std::atan2(node.y(), node.x()));

    // Argument of perigee from node to eccentricity vector; circular
    // orbits take perigee at the node.
    Vec3 edir;
    if (e > 1e-11) {
        edir = evec / e;
    } else {
        edir = node;
    }
    const Vec3 hhat = h / hn;
    const Vec3 node_perp = hhat.cross(node);
    el.argp = wrap_two_pi(std::atan2(edir.dot(node_perp), edir.dot(node)));

    // True anomaly -> eccentric -> mean.
    const Vec3 edir_perp = hhat.cross(edir);
    const double true_anom = std::atan2(s.r.dot(edir_perp), s.r.dot(edir));
    const double cnu = std::cos(true_anom), snu = std::sin(true_anom);
    const double denom = 1.0 + e * cnu;
    const double cE = (e + cnu) / denom;
    const double sE = std::sqrt(1.0 - e * e) * snu / denom;
    const double E = std::atan2(sE, cE);
    el.mean_anom = wrap_two_pi(E - e * std::sin(E));
    return el;
}

DelaunayElements delaunay_from_keplerian(const KeplerianElements& el) {
    DelaunayElements d;
    d.l = el.mean_anom;
    d.g = el.argp;
    d.h = el.raan;
    d.L = std::sqrt(kEarth.mu * el.a);
    d.G = d.L * std::sqrt(1.0 - el.e * el.e);
    d.Z = d.G * std::cos(el.inc);
    return d;
}

KeplerianElements keplerian_from_delaunay(const DelaunayElements& d, const Epoch& epoch) {
    if (d.L <= 0.0 || d.G <= 0.0 || d.G > d.L * (1.0 + 1e-12) || std::abs(d.Z) > d.G * (1.0 + 1e-12))
        throw ConversionError("keplerian_from_delaunay: requires L >= G >= |Z| > 0");
    KeplerianElements el;
    el.a = d.L * d.L / kEarth.mu;
    const double ratio = std::min(d.G / d.L, 1.0);
    el.e = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    el.inc = std::acos(std::clamp(d.Z / d.G, -1.0, 1.0));
    el.raan = wrap_two_pi(d.h);
    el.argp = wrap_two_pi(d.g);
    el.mean_anom = wrap_two_pi(d.l);
    el.epoch = epoch;
    return el;
}

}  // namespace debrisim
