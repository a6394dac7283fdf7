#include <algorithm>
#include <map>

#include "debrisim/metrics/metrics.hpp"
#include "debrisim/util/tabio.hpp"

namespace debrisim {

int majority_object(const Correlation& corr, const std::vector<int>& sidecar) {
    std::map<int, int> votes;
    for (int t : corr.orbit.trails) {
        if (t < 0 || t >= static_cast<int>(sidecar.size())) return -1;
        ++votes[sidecar[static_cast<std::size_t>(t)]];
    }
    int best = -1, best_votes = 0;
    for (const auto& [obj, n] : votes)
        if (n > best_votes) {
            best = obj;
            best_votes = n;
        }
    return 2 * best_votes > static_cast<int>(corr.orbit.trails.size()) ? best : -1;
}

bool is_pure(const Correlation& corr, const std::vector<int>& sidecar) {
    int obj = -2;
    for (int t : corr.orbit.trails) {
        if (t < 0 || t >= static_cast<int>(sidecar.size())) return false;
        const int o = sidecar[static_cast<std::size_t>(t)];
        if (obj == -2) obj = o;
        else if (obj != o) return false;
    }
    return true;
}

EfficiencyReport efficiency_report(const std::vector<Correlation>& catalog,
                                   const std::vector<int>& sidecar, const Population& pop,
                                   const RadarCurve& curve, int min_trails) {
    EfficiencyReport rep;
    rep.curve = curve;
    rep.min_trails = min_trails;

    std::vector<bool> cataloged(pop.size(), false);
    for (const auto& corr : catalog) {
        if (static_cast<int>(corr.orbit.trails.size()) < min_trails) continue;
        const int obj = majority_object(corr, sidecar);
        if (obj >= 0 && obj < static_cast<int>(pop.size()))
            cataloged[static_cast<std::size_t>(obj)] = true;
    }
    std::vector<bool> observed(pop.size(), false);
    for (int obj : sidecar)
        if (obj >= 0 && obj < static_cast<int>(pop.size()))
            observed[static_cast<std::size_t>(obj)] = true;

    for (std::size_t i = 0; i < pop.size(); ++i) {
        const Classification cls = classify(pop[i].truth);
        const int row = 1 + static_cast<int>(cls.cls);
        const double w = pop[i].sampling_factor;
        const bool above = pop[i].diameter_m * 100.0 >=
                           radar_min_diameter_cm(pop[i].truth.perigee_altitude(), curve);
        for (EfficiencyCell* cell :
             {&rep.all[0], &rep.all[row],
              above ? &rep.above_radar[0] : nullptr, above ? &rep.above_radar[row] : nullptr}) {
            if (!cell) continue;
            cell->weight_total += w;
            ++cell->objects_total;
            if (cataloged[i]) {
                cell->weight_cataloged += w;
                ++cell->objects_cataloged;
            } else if (observed[i]) {
                ++cell->observed_uncataloged;
            } else {
                ++cell->never_observed;
            }
        }
    }
    return rep;
}

std::string format_efficiency(const EfficiencyReport& rep) {
    std::string out = strprintf("# catalog efficiency (>= %d trails), weighted by sampling factor\n",
                                rep.min_trails);
    out += "# rows: scope class objects cataloged observed_uncataloged never_observed"
           " efficiency_percent\n";
    const char* names[4] = {"Total", "LEO", "PLEO", "HLEO"};
    for (int scope = 0; scope < 2; ++scope) {
        const char* scope_name = scope == 0 ? "all" : "above_radar";
        for (int k = 0; k < 4; ++k) {
            const EfficiencyCell& c = scope == 0 ? rep.all[k] : rep.above_radar[k];
            out += strprintf("%s %s %d %d %d %d %.2f\n", scope_name, names[k], c.objects_total,
                             c.objects_cataloged, c.observed_uncataloged, c.never_observed,
                             100.0 * c.efficiency());
        }
    }
    return out;
}

}  // namespace debrisim
