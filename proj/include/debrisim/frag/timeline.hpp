#pragma once

#include "debrisim/frag/breakup.hpp"
#include "debrisim/pipeline/pipeline.hpp"
#include "debrisim/survey/runner.hpp"

namespace debrisim {

struct TimelineRow {
    int day = 0;                    // days after the event, 1-based
    int detected_cumulative = 0;    // distinct core fragments seen so far
    double fraction_detected = 0.0;
    int orbits_ge4 = 0;
    int orbits_ge5 = 0;
    int orbits_ge10 = 0;
};

struct TimelineResult {
    std::vector<Fragment> core;           // core of the cloud (|dv| < cutoff)
    std::vector<FragmentOrbit> orbits;    // per core fragment
    Population population;                // non-reentering core fragments
    SurveyOutput survey;
    std::vector<Correlation> catalog;
    std::vector<TimelineRow> rows;
};

/// Observes the fragment cloud with the full network for `days` days after
/// the event and runs the correlation pipeline on the stream in daily
/// batches. Detection fractions count distinct core fragments.
TimelineResult detection_timeline(const FragmentationEvent& event, const Network& net,
                                  const InstrumentModel& inst, const PhotometryModel& ph,
                                  int days, std::uint64_t seed,
                                  const PipelineOptions& pipeline_opt = {},
                                  const BreakupConfig& breakup_cfg = {},
                                  const SurveyOptions& survey_opt = {});

std::string format_timeline(const std::vector<TimelineRow>& rows);

}  // namespace debrisim
