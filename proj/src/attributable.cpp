#include "debrisim/link/attributable.hpp"

#include <algorithm>

#include "debrisim/util/tabio.hpp"

namespace debrisim {

namespace {
constexpr double kDegPerDayFromRadPerSec = kDegPerRad * kSecPerDay;
}

std::string format_attributables(const std::vector<Attributable>& obs,
                                 const std::vector<std::string>& station_names) {
    std::string out =
        "# station epoch_days ra_deg dec_deg ra_dot_deg_day dec_dot_deg_day"
        " sig_ra_deg sig_dec_deg sig_radot_deg_day sig_decdot_deg_day mode\n";
    for (const auto& a : obs) {
        out += strprintf("%s %.9f %.8f %.8f %.8f %.8f %.6e %.6e %.6e %.6e %c\n",
                         station_names.at(a.station).c_str(), a.epoch.days, a.ra * kDegPerRad,
                         a.dec * kDegPerRad, a.ra_dot * kDegPerDayFromRadPerSec,
                         a.dec_dot * kDegPerDayFromRadPerSec, a.sigma[0] * kDegPerRad,
                         a.sigma[1] * kDegPerRad, a.sigma[2] * kDegPerDayFromRadPerSec,
                         a.sigma[3] * kDegPerDayFromRadPerSec,
                         a.mode == ObsMode::Survey ? 's' : 't');
    }
    return out;
}

std::vector<Attributable> parse_attributables(const std::string& path,
                                              const std::vector<std::string>& station_names) {
    std::vector<Attributable> out;
    for (const auto& row : read_table(path)) {
        if (row.fields.size() < 11)
            throw IoError("line " + std::to_string(row.line) + ": expected 11 fields");
        Attributable a;
        const auto it = std::find(station_names.begin(), station_names.end(), row.fields[0]);
        if (it == station_names.end())
            throw IoError("line " + std::to_string(row.line) + ": unknown station '" +
                          row.fields[0] + "'");
        a.station = static_cast<int>(it - station_names.begin());
        a.epoch.days = parse_double(row, 1, "epoch");
        a.ra = parse_double(row, 2, "ra") * kRadPerDeg;
        a.dec = parse_double(row, 3, "dec") * kRadPerDeg;
        a.ra_dot = parse_double(row, 4, "ra_dot") / kDegPerDayFromRadPerSec;
        a.dec_dot = parse_double(row, 5, "dec_dot") / kDegPerDayFromRadPerSec;
        a.sigma[0] = parse_double(row, 6, "sig_ra") * kRadPerDeg;
        a.sigma[1] = parse_double(row, 7, "sig_dec") * kRadPerDeg;
        a.sigma[2] = parse_double(row, 8, "sig_radot") / kDegPerDayFromRadPerSec;
        a.sigma[3] = parse_double(row, 9, "sig_decdot") / kDegPerDayFromRadPerSec;
        a.mode = row.fields[10] == "t" ? ObsMode::Tasking : ObsMode::Survey;
        a.record = static_cast<int>(out.size());
        out.push_back(a);
    }
    return out;
}

}  // namespace debrisim
