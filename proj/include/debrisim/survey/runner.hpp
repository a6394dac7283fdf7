#pragma once

#include <map>

#include "debrisim/survey/scheduler.hpp"

namespace debrisim {

struct SurveyOutput {
    std::vector<Attributable> attributables;
    std::vector<int> sidecar;  // record index -> population index (scoring only)
    std::vector<Exposure> exposures;
    std::map<DetectionFailure, int> failures;
    std::vector<std::string> log;
};

struct SurveyOptions {
    double pass_step_s = 10.0;
    VisibilityLimits limits;
};

/// Full survey synthesis: numerical truth trajectories, pass scan, one
/// exposure per pass at the best-phase third, per-(station, night) weather and
/// the detection chain. Deterministic for a given seed.
SurveyOutput run_survey(const Population& pop, const Network& net, const Epoch& start,
                        const Epoch& end, std::uint64_t seed, const InstrumentModel& inst,
                        const PhotometryModel& ph, const SurveyOptions& opt = {});

/// Truth states of one object at given (ascending) epochs, integrated with
/// the J2 model from the population record.
std::vector<CartesianState> truth_states_at(const PopulationObject& obj,
                                            const std::vector<Epoch>& epochs);

std::string format_sidecar(const std::vector<int>& sidecar, const Population& pop);
std::vector<std::string> parse_sidecar(const std::string& path);

}  // namespace debrisim
