#pragma once

#include <string>
#include <vector>

#include "debrisim/survey/passes.hpp"

namespace debrisim {

struct Exposure {
    int object = -1;      // pass-owner index (truth object or catalog orbit)
    int station = -1;
    Epoch epoch;
    double phase = 0.0;   // rad, at the scheduled instant (from the pass track)
    ObsMode mode = ObsMode::Survey;
};

/// Cadence-grid anchor of a station night (local-noon epoch of the night the
/// instant belongs to); exposures are quantized to the cadence from here.
Epoch night_anchor(const Station& sta, const Epoch& t);

/// One exposure per pass, placed uniformly at random (seeded per pass)
/// inside the lowest-phase third of the pass, quantized to the cadence grid.
/// Capacity: at most `telescopes` exposures per (station, cadence slot);
/// excess is dropped with a log record.
std::vector<Exposure> schedule_survey(const std::vector<Pass>& passes, const Network& net,
                                      const InstrumentModel& inst, const RandomStream& root,
                                      std::vector<std::string>* drop_log = nullptr);

/// Tasking: one candidate exposure per pass at the phase-angle minimum, then
/// only the best-phase sixth of each station-night's candidates is kept
/// (the scheduler spends 1/6 of the observing period at the lowest phases).
std::vector<Exposure> schedule_tasking(const std::vector<Pass>& passes, const Network& net,
                                       const InstrumentModel& inst,
                                       std::vector<std::string>* drop_log = nullptr);

}  // namespace debrisim
