#pragma once

#include <optional>

#include "debrisim/frag/timeline.hpp"
#include "debrisim/metrics/metrics.hpp"

namespace debrisim {

/// One simulation campaign, fully described: inputs, window, thresholds,
/// seed, output directory.
struct Scenario {
    std::string mode;  // build-up | tasking | fragmentation
    std::string population_file;
    std::string network_file;
    std::string config_file;
    std::string out_dir = ".";
    Epoch start{3725.0};  // ~2010-03-15 on the uniform scale
    double days = 14.0;
    std::uint64_t seed = 1;

    // Tasking campaign phases.
    double buildup_days = 14.0;
    double prediction_days = 7.0;

    // Fragmentation event (population_file unused in that mode).
    FragmentationEvent event;
    int timeline_days = 7;

    // Resolved knobs.
    InstrumentModel instrument;
    PhotometryModel photometry;
    PipelineOptions pipeline;
    SurveyOptions survey;
    BreakupConfig breakup;
};

/// Applies the [scenario]/[instrument]/[photometry]/[thresholds]/[breakup]
/// sections of a config file onto a scenario.
void apply_config(Scenario* sc, const Config& cfg);

struct BuildupResult {
    Population population;
    Network network;
    SurveyOutput survey;
    std::vector<Correlation> catalog;
    EfficiencyReport report;
};

struct TaskingEvaluation {
    int object = -1;  // truth index
    OrbitClass cls = OrbitClass::LEO;
    std::size_t trails = 0;
    EnvelopeNorm norms;           // after the prediction horizon
    double velocity_error_rel = 0.0;  // vs truth at the horizon
    double angular_error_rad = 0.0;   // prediction vs truth direction bound
};

struct TaskingResult {
    BuildupResult buildup;
    std::vector<Attributable> stream;  // survey + tasking observations
    std::vector<int> sidecar;
    std::vector<Correlation> catalog;
    std::vector<TaskingEvaluation> evaluations;  // numbered orbits
    double mean_survey_phase_deg = 0.0;
    double mean_tasking_phase_deg = 0.0;
};

struct FragmentationResult {
    TimelineResult timeline;
    std::vector<GabbardRow> gabbard_rows;
};

BuildupResult run_buildup(const Scenario& sc);
TaskingResult run_tasking(const Scenario& sc);
FragmentationResult run_fragmentation(const Scenario& sc);

/// Campaign dispatch: runs the mode, writes every output artifact under
/// out_dir, returns the printed summary. Throws on configuration errors.
std::string run_scenario(const Scenario& sc);

}  // namespace debrisim
