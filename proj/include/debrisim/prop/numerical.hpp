#pragma once

#include <stdexcept>

#include "debrisim/astro/elements.hpp"

namespace debrisim {

struct PropagationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PropagationOptions {
    // Local tolerance: tight enough that propagation error stays negligible
    // against 0.4 arcsec astrometry over multi-week arcs.
    double rel_tol = 1e-12;
    double abs_tol_pos = 1e-9;   // km
    double abs_tol_vel = 1e-12;  // km/s
    bool include_j2 = true;
    double min_radius = 6378.14 + 90.0;  // km; below this the arc has reentered
    double max_step = 600.0;             // s
    double min_step = 1e-4;              // s; smaller means step-size collapse
};

/// Two-body + J2 acceleration (km/s^2).
Vec3 j2_acceleration(const Vec3& r, bool include_j2 = true);

/// Conserved energy-like integral of the J2 problem (km^2/s^2).
double j2_energy(const CartesianState& s, bool include_j2 = true);

/// Adaptive Dormand-Prince 5(4) integrator for the J2 problem, reusable
/// across successive epochs (forward or backward).
class J2Propagator {
public:
    explicit J2Propagator(const CartesianState& initial, PropagationOptions opt = {});

    const CartesianState& state() const { return state_; }
    /// Integrates from the current epoch to t. Throws PropagationError on
    /// reentry or step-size collapse.
    const CartesianState& advance_to(const Epoch& t);

private:
    CartesianState state_;
    PropagationOptions opt_;
    double step_hint_ = 30.0;
};

CartesianState propagate_numerical(const CartesianState& s, double dt_seconds,
                                   const PropagationOptions& opt = {});

/// State transition matrix d(state at t0+dt)/d(state at t0) by central finite
/// differences, relative step 1e-6 per component.
Mat6 state_transition(const CartesianState& s, double dt_seconds,
                      const PropagationOptions& opt = {});

}  // namespace debrisim
