#include "debrisim/survey/runner.hpp"

#include <algorithm>

#include "debrisim/prop/numerical.hpp"
#include "debrisim/util/tabio.hpp"

namespace debrisim {

std::vector<CartesianState> truth_states_at(const PopulationObject& obj,
                                            const std::vector<Epoch>& epochs) {
    std::vector<CartesianState> out;
    out.reserve(epochs.size());
    if (epochs.empty()) return out;
    J2Propagator prop(elements_to_state(obj.truth));
    for (const auto& t : epochs) out.push_back(prop.advance_to(t));
    return out;
}

SurveyOutput run_survey(const Population& pop, const Network& net, const Epoch& start,
                        const Epoch& end, std::uint64_t seed, const InstrumentModel& inst,
                        const PhotometryModel& ph, const SurveyOptions& opt) {
    SurveyOutput out;
    const RandomStream root(seed);

    // Pass scan on the numerical truth, one sweep per object across the
    // whole network. The propagator is shared between grid nodes.
    std::vector<Pass> passes;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        J2Propagator prop(elements_to_state(pop[i].truth));
        auto traj = [&prop](const Epoch& t) { return prop.advance_to(t); };
        auto obj_passes = scan_passes(traj, net, start, end, opt.pass_step_s, opt.limits);
        for (auto& p : obj_passes) p.object = static_cast<int>(i);
        passes.insert(passes.end(), obj_passes.begin(), obj_passes.end());
    }

    out.exposures = schedule_survey(passes, net, inst, root, &out.log);

    // Synthesis, object by object along its sorted exposure epochs.
    std::vector<std::vector<const Exposure*>> per_object(pop.size());
    for (const auto& e : out.exposures) per_object[e.object].push_back(&e);

    struct Rec {
        Attributable a;
        int object;
    };
    std::vector<Rec> recs;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (per_object[i].empty()) continue;
        std::sort(per_object[i].begin(), per_object[i].end(),
                  [](const Exposure* a, const Exposure* b) { return a->epoch < b->epoch; });
        std::vector<Epoch> epochs;
        for (const auto* e : per_object[i]) epochs.push_back(e->epoch);
        const auto states = truth_states_at(pop[i], epochs);
        const std::uint64_t key = object_key_hash(pop[i].id);
        PhotometryModel obj_ph = ph;
        obj_ph.albedo = pop[i].albedo;
        for (std::size_t k = 0; k < epochs.size(); ++k) {
            const Exposure* e = per_object[i][k];
            auto det = synthesize_from_state(states[k], pop[i].diameter_m, key, net[e->station],
                                             e->station, e->epoch, e->mode, root, inst, obj_ph,
                                             opt.limits);
            if (det.detected) {
                recs.push_back({*det.attributable, static_cast<int>(i)});
            } else {
                ++out.failures[det.reason];
            }
        }
    }

    // Deterministic stream order: by epoch, then station, then object.
    std::sort(recs.begin(), recs.end(), [](const Rec& x, const Rec& y) {
        if (x.a.epoch.days != y.a.epoch.days) return x.a.epoch.days < y.a.epoch.days;
        if (x.a.station != y.a.station) return x.a.station < y.a.station;
        return x.object < y.object;
    });
    for (auto& r : recs) {
        r.a.record = static_cast<int>(out.attributables.size());
        out.attributables.push_back(r.a);
        out.sidecar.push_back(r.object);
    }
    return out;
}

std::string format_sidecar(const std::vector<int>& sidecar, const Population& pop) {
    std::string out = "# record object_id\n";
    for (std::size_t i = 0; i < sidecar.size(); ++i)
        out += strprintf("%zu %s\n", i, pop[sidecar[i]].id.c_str());
    return out;
}

std::vector<std::string> parse_sidecar(const std::string& path) {
    std::vector<std::string> ids;
    for (const auto& row : read_table(path)) {
        if (row.fields.size() != 2)
            throw IoError("sidecar line " + std::to_string(row.line) + ": expected 2 fields");
        const std::size_t idx = static_cast<std::size_t>(parse_int(row, 0, "record"));
        if (idx != ids.size())
            throw IoError("sidecar line " + std::to_string(row.line) + ": records out of order");
        ids.push_back(row.fields[1]);
    }
    return ids;
}

}  // namespace debrisim
