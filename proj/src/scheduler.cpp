#include "debrisim/survey/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "debrisim/util/tabio.hpp"

namespace debrisim {

namespace {

// Phase at an epoch from the pass's sampled track (linear interpolation).
double phase_at(const Pass& p, double t_days) {
    const auto& ts = p.sample_days;
    const auto& ph = p.sample_phase;
    if (ts.empty()) return 0.0;
    if (t_days <= ts.front()) return ph.front();
    if (t_days >= ts.back()) return ph.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t_days);
    const std::size_t i = static_cast<std::size_t>(it - ts.begin());
    const double w = (t_days - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return ph[i - 1] + w * (ph[i] - ph[i - 1]);
}

Epoch quantize_to_cadence(const Station& sta, const Epoch& t, double cadence_s) {
    const Epoch anchor = night_anchor(sta, t);
    const double slot = std::round(t.seconds_from(anchor) / cadence_s);
    return anchor.plus_seconds(slot * cadence_s);
}

// Capacity bookkeeping: at most `telescopes` exposures per (station, slot).
std::vector<Exposure> enforce_capacity(std::vector<Exposure> exposures, const Network& net,
                                       double cadence_s, std::vector<std::string>* drop_log) {
    std::sort(exposures.begin(), exposures.end(), [](const Exposure& a, const Exposure& b) {
        if (a.epoch.days != b.epoch.days) return a.epoch.days < b.epoch.days;
        if (a.station != b.station) return a.station < b.station;
        return a.object < b.object;
    });
    std::map<std::pair<int, long>, int> load;
    std::vector<Exposure> kept;
    for (const auto& e : exposures) {
        const Epoch anchor = night_anchor(net[e.station], e.epoch);
        const long slot = std::lround(e.epoch.seconds_from(anchor) / cadence_s);
        int& n = load[{e.station, slot}];
        if (n >= net[e.station].telescopes) {
            if (drop_log)
                drop_log->push_back(strprintf("capacity: dropped object %d station %d at %.9f",
                                              e.object, e.station, e.epoch.days));
            continue;
        }
        ++n;
        kept.push_back(e);
    }
    return kept;
}

}  // namespace

Epoch night_anchor(const Station& sta, const Epoch& t) {
    const double local_noon_days = std::floor(t.days + sta.lon / kTwoPi);
    return Epoch{local_noon_days - sta.lon / kTwoPi};
}

std::vector<Exposure> schedule_survey(const std::vector<Pass>& passes, const Network& net,
                                      const InstrumentModel& inst, const RandomStream& root,
                                      std::vector<std::string>* drop_log) {
    std::vector<Exposure> exposures;
    for (const auto& p : passes) {
        if (p.sample_days.empty()) continue;
        const double duration = p.set.seconds_from(p.rise);
        if (duration <= 0.0) continue;

        // Mean phase per third of the pass.
        double sum[3] = {0, 0, 0};
        int cnt[3] = {0, 0, 0};
        for (std::size_t i = 0; i < p.sample_days.size(); ++i) {
            const double f = (p.sample_days[i] - p.rise.days) / (p.set.days - p.rise.days);
            const int third = std::clamp(static_cast<int>(f * 3.0), 0, 2);
            sum[third] += p.sample_phase[i];
            ++cnt[third];
        }
        int best = 0;
        double best_mean = 1e30;
        for (int k = 0; k < 3; ++k) {
            if (cnt[k] == 0) continue;
            const double mean = sum[k] / cnt[k];
            if (mean < best_mean) {
                best_mean = mean;
                best = k;
            }
        }

        // The barrier crossing lands anywhere inside the best third.
        auto rng = root.fork("survey_exposure", static_cast<std::uint64_t>(p.object),
                             static_cast<std::uint64_t>(p.station) << 32 |
                                 static_cast<std::uint64_t>(std::llround(p.rise.days * 86400.0)));
        const Epoch third_start = p.rise.plus_seconds(duration / 3.0 * best);
        const double offset = rng.uniform() * duration / 3.0;
        Epoch t = quantize_to_cadence(net[p.station], third_start.plus_seconds(offset),
                                      inst.cadence_s);
        if (t < p.rise) t = t.plus_seconds(inst.cadence_s);
        if (t > p.set) t = t.plus_seconds(-inst.cadence_s);
        if (t < p.rise || t > p.set) continue;  // sub-cadence pass

        Exposure e;
        e.object = p.object;
        e.station = p.station;
        e.epoch = t;
        e.phase = phase_at(p, t.days);
        e.mode = ObsMode::Survey;
        exposures.push_back(e);
    }
    return enforce_capacity(std::move(exposures), net, inst.cadence_s, drop_log);
}

std::vector<Exposure> schedule_tasking(const std::vector<Pass>& passes, const Network& net,
                                       const InstrumentModel& inst,
                                       std::vector<std::string>* drop_log) {
    // Lowest-phase instant per (object, station, night): the scheduler spends
    // only the best-phase sixth of each object's nightly observability on it,
    // so the minimum-phase sample is the exposure epoch.
    struct Best {
        double phase = 1e30;
        double t_days = 0.0;
    };
    std::map<std::tuple<int, int, long>, Best> best;
    for (const auto& p : passes) {
        for (std::size_t i = 0; i < p.sample_days.size(); ++i) {
            const long night = night_index(net[p.station], Epoch{p.sample_days[i]});
            auto& b = best[{p.object, p.station, night}];
            if (p.sample_phase[i] < b.phase) {
                b.phase = p.sample_phase[i];
                b.t_days = p.sample_days[i];
            }
        }
    }
    std::vector<Exposure> exposures;
    for (const auto& [key, b] : best) {
        Exposure e;
        e.object = std::get<0>(key);
        e.station = std::get<1>(key);
        e.epoch = quantize_to_cadence(net[e.station], Epoch{b.t_days}, inst.cadence_s);
        e.phase = b.phase;
        e.mode = ObsMode::Tasking;
        exposures.push_back(e);
    }
    return enforce_capacity(std::move(exposures), net, inst.cadence_s, drop_log);
}

}  // namespace debrisim
