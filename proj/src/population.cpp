#include "debrisim/survey/population.hpp"

#include <set>

#include "debrisim/util/tabio.hpp"

namespace debrisim {

Population load_population(const std::string& path) {
    Population pop;
    std::set<std::string> seen;
    for (const auto& row : read_table(path)) {
        if (row.fields.size() != 11)
            throw IoError("population " + path + " line " + std::to_string(row.line) +
                          ": expected 11 fields, got " + std::to_string(row.fields.size()));
        PopulationObject o;
        o.id = row.fields[0];
        if (!seen.insert(o.id).second)
            throw IoError("population " + path + " line " + std::to_string(row.line) +
                          ": duplicate id '" + o.id + "'");
        o.truth.epoch.days = parse_double(row, 1, "epoch");
        o.truth.a = parse_double(row, 2, "a_km");
        o.truth.e = parse_double(row, 3, "e");
        o.truth.inc = parse_double(row, 4, "inc_deg") * kRadPerDeg;
        o.truth.raan = wrap_two_pi(parse_double(row, 5, "raan_deg") * kRadPerDeg);
        o.truth.argp = wrap_two_pi(parse_double(row, 6, "argp_deg") * kRadPerDeg);
        o.truth.mean_anom = wrap_two_pi(parse_double(row, 7, "mean_anom_deg") * kRadPerDeg);
        o.diameter_m = parse_double(row, 8, "diameter_m");
        o.albedo = parse_double(row, 9, "albedo");
        o.sampling_factor = parse_int(row, 10, "sampling_factor");

        auto fail = [&](const std::string& what) {
            throw IoError("population " + path + " line " + std::to_string(row.line) + ": " + what);
        };
        if (o.truth.a <= 0.0) fail("field 'a_km' must be > 0");
        if (o.truth.e < 0.0 || o.truth.e >= 1.0) fail("field 'e' out of [0,1)");
        if (o.truth.inc < 0.0 || o.truth.inc > kPi) fail("field 'inc_deg' out of [0,180]");
        if (o.diameter_m <= 0.0) fail("field 'diameter_m' must be > 0");
        if (o.albedo <= 0.0 || o.albedo > 1.0) fail("field 'albedo' out of (0,1]");
        if (o.sampling_factor < 1) fail("field 'sampling_factor' must be >= 1");
        pop.push_back(o);
    }
    return pop;
}

std::string format_population(const Population& pop) {
    std::string out =
        "# id epoch_days a_km e inc_deg raan_deg argp_deg mean_anom_deg"
        " diameter_m albedo sampling_factor\n";
    for (const auto& o : pop) {
        out += strprintf("%s %.9f %.6f %.9f %.7f %.7f %.7f %.7f %.4f %.3f %d\n", o.id.c_str(),
                         o.truth.epoch.days, o.truth.a, o.truth.e, o.truth.inc * kDegPerRad,
                         o.truth.raan * kDegPerRad, o.truth.argp * kDegPerRad,
                         o.truth.mean_anom * kDegPerRad, o.diameter_m, o.albedo,
                         o.sampling_factor);
    }
    return out;
}

void save_population(const Population& pop, const std::string& path) {
    write_text_file(path, format_population(pop));
}

}  // namespace debrisim
