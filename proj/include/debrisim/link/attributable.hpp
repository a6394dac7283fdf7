#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "debrisim/astro/constants.hpp"
#include "debrisim/astro/epoch.hpp"

namespace debrisim {

enum class ObsMode { Survey, Tasking };

/// One trail reduced to angles and angular rates at an epoch (rad, rad/s).
struct Attributable {
    double ra = 0.0;
    double dec = 0.0;
    double ra_dot = 0.0;
    double dec_dot = 0.0;
    Epoch epoch;
    int station = -1;           // index into the network
    Eigen::Vector4d sigma = Eigen::Vector4d::Zero();  // per-component std dev
    ObsMode mode = ObsMode::Survey;
    int record = -1;            // index in the attributable stream

    Eigen::Matrix4d covariance() const {
        return sigma.cwiseProduct(sigma).asDiagonal();
    }
    Eigen::Vector4d components() const { return {ra, dec, ra_dot, dec_dot}; }
};

/// Attributable stream file: station_name epoch_days ra_deg dec_deg
/// ra_dot_deg_day dec_dot_deg_day sigma_ra sigma_dec sigma_radot sigma_decdot mode.
std::string format_attributables(const std::vector<Attributable>& obs,
                                 const std::vector<std::string>& station_names);
std::vector<Attributable> parse_attributables(const std::string& path,
                                              const std::vector<std::string>& station_names);

}  // namespace debrisim
