#include "debrisim/astro/station.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace debrisim {

CartesianState geodetic_to_inertial(const Station& sta, const Epoch& t) {
    // Spherical Earth figure: geocentric radius = R_earth + height.
    const double radius = kEarth.earth_radius + sta.height_m / 1000.0;
    const double theta = earth_rotation_angle(t) + sta.lon;
    const double clat = std::cos(sta.lat), slat = std::sin(sta.lat);

    CartesianState s;
    s.r = Vec3(radius * clat * std::cos(theta), radius * clat * std::sin(theta), radius * slat);
    s.v = kEarth.earth_rotation_rate * Vec3(-s.r.y(), s.r.x(), 0.0);
    s.epoch = t;
    return s;
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open network file: " + path);
    Network net;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        Station sta;
        double lat_deg, lon_deg;
        if (!(ss >> sta.name)) continue;  // blank line
        if (!(ss >> lat_deg >> lon_deg >> sta.height_m >> sta.cloud_prob))
            throw std::runtime_error("network file " + path + " line " +
                                     std::to_string(lineno) + ": expected name lat lon height cloud_prob");
        if (!(ss >> sta.telescopes)) sta.telescopes = 3;
        if (lat_deg < -90.0 || lat_deg > 90.0)
            throw std::runtime_error("network file " + path + " line " +
                                     std::to_string(lineno) + ": latitude out of range");
        if (sta.cloud_prob < 0.0 || sta.cloud_prob > 1.0)
            throw std::runtime_error("network file " + path + " line " +
                                     std::to_string(lineno) + ": cloud probability out of [0,1]");
        sta.lat = lat_deg * kRadPerDeg;
        sta.lon = lon_deg * kRadPerDeg;
        net.push_back(sta);
    }
    if (net.empty()) throw std::runtime_error("network file " + path + ": no stations");
    return net;
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write network file: " + path);
    out << "# name lat_deg lon_deg_east height_m cloud_prob telescopes\n";
    char buf[256];
    for (const auto& s : net) {
        std::snprintf(buf, sizeof buf, "%s %.7f %.7f %.1f %.3f %d\n", s.name.c_str(),
                      s.lat * kDegPerRad, s.lon * kDegPerRad, s.height_m, s.cloud_prob,
                      s.telescopes);
        out << buf;
    }
}

Network default_network() {
    auto mk = [](const char* name, double lat, double lon, double h, double cp) {
        Station s;
        s.name = name;
        s.lat = lat * kRadPerDeg;
        s.lon = lon * kRadPerDeg;
        s.height_m = h;
        s.cloud_prob = cp;
        return s;
    };
    return {
        mk("TEIDE", 28.3009167, -16.5118056, 2390.0, 0.25),
        mk("HAO", -18.1458333, -140.8816667, 6.0, 0.30),
        mk("FALKLAND", -51.7088889, -57.8408333, 30.0, 0.50),
        mk("NEW_NORCIA", -31.0483333, 116.1919444, 244.0, 0.30),
        mk("MALARGUE", -35.7733333, -69.3997222, 1509.0, 0.30),
        mk("GRAN_SASSO", 42.5000000, 13.5511111, 1439.0, 0.40),
        mk("PICO_DE_VARA", 37.7966667, -25.2194444, 579.0, 0.40),
    };
}

}  // namespace debrisim
