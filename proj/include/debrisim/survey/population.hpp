#pragma once

#include <string>
#include <vector>

#include "debrisim/astro/elements.hpp"

namespace debrisim {

/// Truth object used for synthesis and scoring. The sampling factor is the
/// number of same-orbit fragments this record stands for in efficiency
/// accounting; the object is simulated once.
struct PopulationObject {
    std::string id;
    KeplerianElements truth;
    double diameter_m = 0.0;
    double albedo = 0.1;
    int sampling_factor = 1;
};

using Population = std::vector<PopulationObject>;

/// Population file: id epoch_days a_km e inc_deg raan_deg argp_deg
/// mean_anom_deg diameter_m albedo sampling_factor.
Population load_population(const std::string& path);
void save_population(const Population& pop, const std::string& path);
std::string format_population(const Population& pop);

}  // namespace debrisim
