#pragma once

#include <string>
#include <vector>

#include "debrisim/astro/constants.hpp"
#include "debrisim/astro/elements.hpp"

namespace debrisim {

struct Station {
    std::string name;
    double lat = 0.0;        // geodetic latitude, rad
    double lon = 0.0;        // east longitude, rad
    double height_m = 0.0;
    double cloud_prob = 0.0; // probability a night is clouded out
    int telescopes = 3;
};

/// Inertial station state at an epoch (spherical Earth figure; velocity is
/// the Earth-rotation term only).
CartesianState geodetic_to_inertial(const Station& sta, const Epoch& t);

using Network = std::vector<Station>;

/// Station network file: name lat_deg lon_deg_east height_m cloud_prob [telescopes].
Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

/// The 7-station network the simulations assume.
Network default_network();

}  // namespace debrisim
