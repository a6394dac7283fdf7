#include "debrisim/frag/timeline.hpp"

#include <algorithm>
#include <set>

#include "debrisim/util/tabio.hpp"

namespace debrisim {

TimelineResult detection_timeline(const FragmentationEvent& event, const Network& net,
                                  const InstrumentModel& inst, const PhotometryModel& ph,
                                  int days, std::uint64_t seed,
                                  const PipelineOptions& pipeline_opt,
                                  const BreakupConfig& breakup_cfg,
                                  const SurveyOptions& survey_opt) {
    TimelineResult out;
    out.core = core_filter(generate_fragments(event, breakup_cfg), event);
    out.orbits = fragment_states(event.parent, out.core);

    for (std::size_t i = 0; i < out.orbits.size(); ++i) {
        if (out.orbits[i].reentering) continue;
        PopulationObject obj;
        obj.id = strprintf("F%04zu", i);
        obj.truth = out.orbits[i].elements;
        obj.diameter_m = out.core[i].size_m;
        obj.albedo = 0.1;
        obj.sampling_factor = 1;
        out.population.push_back(obj);
    }

    const Epoch start = event.parent.epoch;
    const Epoch end = start.plus_days(days);
    out.survey = run_survey(out.population, net, start, end, seed, inst, ph, survey_opt);

    CorrelationPipeline pipeline(net, pipeline_opt);
    std::set<int> seen;
    std::size_t cursor = 0;
    for (int day = 1; day <= days; ++day) {
        const double day_end = start.days + day;
        std::vector<Attributable> batch;
        while (cursor < out.survey.attributables.size() &&
               out.survey.attributables[cursor].epoch.days < day_end) {
            seen.insert(out.survey.sidecar[cursor]);
            batch.push_back(out.survey.attributables[cursor]);
            ++cursor;
        }
        pipeline.process_batch(batch);

        TimelineRow row;
        row.day = day;
        row.detected_cumulative = static_cast<int>(seen.size());
        row.fraction_detected =
            out.population.empty() ? 0.0
                                   : static_cast<double>(seen.size()) / out.population.size();
        for (const auto& c : pipeline.catalog()) {
            const std::size_t n = c.orbit.trails.size();
            if (n >= 4) ++row.orbits_ge4;
            if (n >= 5) ++row.orbits_ge5;
            if (n >= 10) ++row.orbits_ge10;
        }
        out.rows.push_back(row);
    }
    pipeline.finalize();
    out.catalog = pipeline.catalog();
    return out;
}

std::string format_timeline(const std::vector<TimelineRow>& rows) {
    std::string out = "# day detected fraction orbits_ge4 orbits_ge5 orbits_ge10\n";
    for (const auto& r : rows)
        out += strprintf("%d %d %.4f %d %d %d\n", r.day, r.detected_cumulative,
                         r.fraction_detected, r.orbits_ge4, r.orbits_ge5, r.orbits_ge10);
    return out;
}

}  // namespace debrisim
