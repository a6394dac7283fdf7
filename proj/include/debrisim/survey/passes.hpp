#pragma once

#include <functional>
#include <vector>

#include "debrisim/obs/synthesize.hpp"
#include "debrisim/survey/population.hpp"

namespace debrisim {

/// One maximal interval over which the visibility conditions hold, with the
/// phase-angle track sampled on the scan grid.
struct Pass {
    int object = -1;   // caller-side index
    int station = -1;  // network index
    Epoch rise, set;
    double peak_elevation = 0.0;
    std::vector<double> sample_days;   // epochs of in-pass samples
    std::vector<double> sample_phase;  // rad
};

/// Which of the three visibility conditions the scan enforces. The survey
/// default is all three; the elevation-only mask gives the purely geometric
/// pass rate (the one a radar would see too).
struct VisibilityMask {
    bool elevation = true;
    bool sunlit = true;
    bool dark = true;
};

using StateFn = std::function<CartesianState(const Epoch&)>;

/// Scans one trajectory against several stations in a single sweep.
/// Boundaries are bisected to ~1 s so the result is insensitive to the
/// sampling step. Station indices in the result refer to `stations`.
std::vector<Pass> scan_passes(const StateFn& state_at, const Network& stations,
                              const Epoch& start, const Epoch& end, double step_s,
                              const VisibilityLimits& lim = {}, const VisibilityMask& mask = {});

/// Spec surface: passes of one object above one station using the secular
/// trajectory. Window must not exceed 90 days (secular validity).
std::vector<Pass> find_passes(const PopulationObject& obj, const Station& sta,
                              const Epoch& start, const Epoch& end, double step_s = 10.0,
                              const VisibilityLimits& lim = {}, const VisibilityMask& mask = {});

}  // namespace debrisim
