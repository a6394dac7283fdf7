#include "debrisim/prop/numerical.hpp"

#include <algorithm>
#include <cmath>

namespace debrisim {

Vec3 j2_acceleration(const Vec3& r, bool include_j2) {
    const double rn2 = r.squaredNorm();
    const double rn = std::sqrt(rn2);
    const double rn3 = rn2 * rn;
    Vec3 a = -kEarth.mu / rn3 * r;
    if (include_j2) {
        const double re_r2 = kEarth.earth_radius * kEarth.earth_radius / rn2;
        const double k = -1.5 * kEarth.j2 * kEarth.mu * re_r2 / rn3;
        const double z2_r2 = r.z() * r.z() / rn2;
        a.x() += k * r.x() * (1.0 - 5.0 * z2_r2);
        a.y() += k * r.y() * (1.0 - 5.0 * z2_r2);
        a.z() += k * r.z() * (3.0 - 5.0 * z2_r2);
    }
    return a;
}

double j2_energy(const CartesianState& s, bool include_j2) {
    const double rn = s.r.norm();
    double e = 0.5 * s.v.squaredNorm() - kEarth.mu / rn;
    if (include_j2) {
        const double s2 = s.r.z() * s.r.z() / (rn * rn);
        e += kEarth.mu * kEarth.j2 * kEarth.earth_radius * kEarth.earth_radius *
             (3.0 * s2 - 1.0) / (2.0 * rn * rn * rn);
    }
    return e;
}

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;

Vec6 rhs(const Vec6& y, bool j2) {
    Vec6 dy;
    dy.head<3>() = y.tail<3>();
    dy.tail<3>() = j2_acceleration(y.head<3>(), j2);
    return dy;
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

J2Propagator::J2Propagator(const CartesianState& initial, PropagationOptions opt)
    : state_(initial), opt_(opt) {}

const CartesianState& J2Propagator::advance_to(const Epoch& t) {
    double remaining = t.seconds_from(state_.epoch);
    if (remaining == 0.0) return state_;
    const double dir = remaining > 0.0 ? 1.0 : -1.0;

    Vec6 y;
    y << state_.r, state_.v;
    Vec6 k1 = rhs(y, opt_.include_j2);
    double h = dir * std::clamp(step_hint_, opt_.min_step, opt_.max_step);

    while (dir * remaining > 0.0) {
        if (std::abs(h) > std::abs(remaining)) h = remaining;

        const Vec6 k2 = rhs(y + h * (a21 * k1), opt_.include_j2);
        const Vec6 k3 = rhs(y + h * (a31 * k1 + a32 * k2), opt_.include_j2);
        const Vec6 k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3), opt_.include_j2);
        const Vec6 k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), opt_.include_j2);
        const Vec6 k6 =
            rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), opt_.include_j2);
        const Vec6 ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec6 k7 = rhs(ynew, opt_.include_j2);
        const Vec6 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double norm = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double atol = i < 3 ? opt_.abs_tol_pos : opt_.abs_tol_vel;
            const double sc = atol + opt_.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            norm = std::max(norm, std::abs(err[i]) / sc);
        }

        if (norm <= 1.0) {
            y = ynew;
            k1 = k7;  // FSAL
            remaining -= h;
            if (y.head<3>().norm() <= opt_.min_radius) {
                char buf[128];
                std::snprintf(buf, sizeof buf,
                              "propagation failure: radius %.1f km below %.1f km (reentry)",
                              y.head<3>().norm(), opt_.min_radius);
                throw PropagationError(buf);
            }
        }
        const double factor =
            norm > 0.0 ? std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0) : 5.0;
        h *= factor;
        if (std::abs(h) > opt_.max_step) h = dir * opt_.max_step;
        if (std::abs(h) < opt_.min_step && dir * remaining > opt_.min_step)
            throw PropagationError("propagation failure: step-size collapse");
    }

    step_hint_ = std::abs(h);
    state_.r = y.head<3>();
    state_.v = y.tail<3>();
    state_.epoch = t;
    return state_;
}

CartesianState propagate_numerical(const CartesianState& s, double dt_seconds,
                                   const PropagationOptions& opt) {
    J2Propagator prop(s, opt);
    return prop.advance_to(s.epoch.plus_seconds(dt_seconds));
}

Mat6 state_transition(const CartesianState& s, double dt_seconds, const PropagationOptions& opt) {
    Mat6 phi;
    Vec3 scale_r = s.r.cwiseAbs().cwiseMax(1.0);
    Vec3 scale_v = s.v.cwiseAbs().cwiseMax(1e-3);
    for (int j = 0; j < 6; ++j) {
        const double h = 1e-6 * (j < 3 ? scale_r[j] : scale_v[j - 3]);
        CartesianState plus = s, minus = s;
        if (j < 3) {
            plus.r[j] += h;
            minus.r[j] -= h;
        } else {
            plus.v[j - 3] += h;
            minus.v[j - 3] -= h;
        }
        const CartesianState sp = propagate_numerical(plus, dt_seconds, opt);
        const CartesianState sm = propagate_numerical(minus, dt_seconds, opt);
        for (int i = 0; i < 3; ++i) {
            phi(i, j) = (sp.r[i] - sm.r[i]) / (2.0 * h);
            phi(i + 3, j) = (sp.v[i] - sm.v[i]) / (2.0 * h);
        }
    }
    return phi;
}

}  // namespace debrisim
