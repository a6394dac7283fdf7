#pragma once

#include <vector>

#include "debrisim/astro/elements.hpp"
#include "debrisim/util/config.hpp"
#include "debrisim/util/rng.hpp"

namespace debrisim {

enum class BreakupKind { Explosion, Collision };

struct FragmentationEvent {
    BreakupKind kind = BreakupKind::Explosion;
    CartesianState parent;
    double target_mass_kg = 1000.0;
    double projectile_mass_kg = 0.0;   // collisions only
    double impact_speed_kms = 0.0;     // collisions only
    double size_cutoff_m = 0.10;
    double dv_cutoff_ms = 100.0;       // core-of-cloud filter
    std::uint64_t seed = 1;
};

struct Fragment {
    double size_m = 0.0;
    double area_to_mass = 0.0;  // m^2/kg
    double area_m2 = 0.0;
    double mass_kg = 0.0;
    Vec3 dv_ms = Vec3::Zero();  // isotropic ejection velocity, m/s
};

/// Standard breakup-model constants (cumulative size power laws, the
/// area-to-mass bimodal lognormal bridging law, and the lognormal ejection
/// velocity law tied to A/m). Overridable from the [breakup] config section.
struct BreakupConfig {
    double explosion_coeff = 6.0;       // N(>L) = coeff * L^exp
    double explosion_exp = -1.6;
    double collision_coeff = 0.1;       // N(>L) = coeff * M^0.75 * L^exp
    double collision_mass_exp = 0.75;
    double collision_exp = -1.71;
    double catastrophic_threshold = 40000.0;  // J/kg
    // A/m mixture in chi = log10(A/m) as piecewise-linear functions of
    // lambda = log10(L): {lo, hi, value_lo, value_hi}.
    double am_alpha[4] = {-1.95, 0.55, 0.0, 1.0};
    double am_mu1[4] = {-1.1, 0.0, -0.6, -0.95};
    double am_sigma1[4] = {-1.3, -0.3, 0.1, 0.3};
    double am_mu2[4] = {-0.7, -0.1, -1.2, -2.0};
    double am_sigma2[4] = {-0.5, -0.3, 0.5, 0.7};
    // log10(dv m/s) = slope * chi + offset, spread sigma.
    double dv_explosion_slope = 0.2, dv_explosion_offset = 1.85;
    double dv_collision_slope = 0.9, dv_collision_offset = 2.9;
    double dv_sigma = 0.4;
    // Area(size): A = c * d^e.
    double area_coeff = 0.556945, area_exp = 2.0047077;
};

BreakupConfig breakup_from_config(const Config& cfg);

/// Specific impact energy >= 40 kJ/kg (inclusive) marks a collision
/// catastrophic (complete fragmentation of the target).
bool is_catastrophic(double projectile_mass_kg, double impact_speed_kms, double target_mass_kg,
                     const BreakupConfig& cfg = {});

/// Expected fragment count above the cutoff for the event's power law.
double expected_fragment_count(const FragmentationEvent& event, const BreakupConfig& cfg = {});

/// Samples the fragment cloud (count Poisson around the power-law
/// expectation, sizes by inverse CDF, A/m and dv per the lognormal laws,
/// isotropic dv direction). Throws std::invalid_argument for a
/// non-catastrophic collision (cratering regime, not modeled).
std::vector<Fragment> generate_fragments(const FragmentationEvent& event,
                                         const BreakupConfig& cfg = {});

/// Keeps the core of the cloud: |dv| below the event cutoff.
std::vector<Fragment> core_filter(const std::vector<Fragment>& fragments,
                                  const FragmentationEvent& event);

struct FragmentOrbit {
    KeplerianElements elements;
    bool reentering = false;  // perigee below 200 km
};

/// Elements of each fragment after adding its dv to the parent velocity.
std::vector<FragmentOrbit> fragment_states(const CartesianState& parent,
                                           const std::vector<Fragment>& fragments);

/// Circular parent orbit used by the reference scenarios: 1400 km altitude,
/// 74 deg inclination.
CartesianState default_parent(const Epoch& t);

struct GabbardRow {
    int fragment = 0;
    double period_min = 0.0;
    double apogee_km = 0.0;   // height above the Earth radius
    double perigee_km = 0.0;
};

std::vector<GabbardRow> gabbard(const std::vector<FragmentOrbit>& orbits);
std::string format_gabbard(const std::vector<GabbardRow>& rows);

}  // namespace debrisim
