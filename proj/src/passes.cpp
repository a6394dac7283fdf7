#include "debrisim/survey/passes.hpp"

#include <cmath>
#include <stdexcept>

#include "debrisim/astro/sun.hpp"
#include "debrisim/prop/secular.hpp"

namespace debrisim {

namespace {

bool visible_at(const CartesianState& obj, const Station& sta, const Epoch& t,
                const VisibilityLimits& lim, const VisibilityMask& mask, double* elevation_out,
                double* phase_out) {
    const CartesianState ss = geodetic_to_inertial(sta, t);
    const Vec3 rel = obj.r - ss.r;
    const double elevation = std::asin(std::clamp(rel.normalized().dot(ss.r.normalized()), -1.0, 1.0));
    if (elevation_out) *elevation_out = elevation;
    if (mask.elevation && elevation < lim.min_elevation) return false;
    const Vec3 sun = sun_direction(t);
    if (mask.sunlit && in_earth_shadow(obj.r, sun)) return false;
    if (mask.dark && !station_dark(sta, t, lim.dark_sun_elevation)) return false;
    if (phase_out) *phase_out = phase_angle(obj.r, ss.r, sun);
    return true;
}

// Cubic Hermite between two sampled states.
CartesianState hermite(const CartesianState& s0, const CartesianState& s1, const Epoch& t) {
    const double h = s1.epoch.seconds_from(s0.epoch);
    const double s = h == 0.0 ? 0.0 : t.seconds_from(s0.epoch) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    CartesianState out;
    out.r = h00 * s0.r + (h10 * h) * s0.v + h01 * s1.r + (h11 * h) * s1.v;
    const double d00 = (6 * s2 - 6 * s) / h, d10 = 3 * s2 - 4 * s + 1;
    const double d01 = (-6 * s2 + 6 * s) / h, d11 = 3 * s2 - 2 * s;
    out.v = d00 * s0.r + d10 * s0.v + d01 * s1.r + d11 * s1.v;
    out.epoch = t;
    return out;
}

Epoch refine_boundary(const CartesianState& s_prev, const CartesianState& s_cur,
                      const Station& sta, const VisibilityLimits& lim, const VisibilityMask& mask,
                      bool rising) {
    Epoch lo = s_prev.epoch, hi = s_cur.epoch;
    // Invariant: visible(lo) != visible(hi); rising means hi visible.
    while (hi.seconds_from(lo) > 1.0) {
        const Epoch mid{0.5 * (lo.days + hi.days)};
        const bool vis = visible_at(hermite(s_prev, s_cur, mid), sta, mid, lim, mask, nullptr, nullptr);
        if (vis == rising) hi = mid; else lo = mid;
    }
    return rising ? hi : lo;
}

}  // namespace

std::vector<Pass> scan_passes(const StateFn& state_at, const Network& stations,
                              const Epoch& start, const Epoch& end, double step_s,
                              const VisibilityLimits& lim, const VisibilityMask& mask) {
    std::vector<Pass> out;
    const long nsteps = static_cast<long>(std::ceil(end.seconds_from(start) / step_s));

    struct Machine {
        bool in = false;
        Pass pass;
    };
    std::vector<Machine> machines(stations.size());

    CartesianState prev;
    bool have_prev = false;
    for (long i = 0; i <= nsteps; ++i) {
        const Epoch t = (i == nsteps) ? end : start.plus_seconds(step_s * i);
        const CartesianState obj = state_at(t);
        for (std::size_t k = 0; k < stations.size(); ++k) {
            double elevation = 0.0, phase = 0.0;
            const bool vis = visible_at(obj, stations[k], t, lim, mask, &elevation, &phase);
            Machine& m = machines[k];
            if (vis && !m.in) {
                m.in = true;
                m.pass = Pass{};
                m.pass.station = static_cast<int>(k);
                m.pass.rise = have_prev ? refine_boundary(prev, obj, stations[k], lim, mask, true) : t;
            }
            if (vis) {
                m.pass.peak_elevation = std::max(m.pass.peak_elevation, elevation);
                m.pass.sample_days.push_back(t.days);
                m.pass.sample_phase.push_back(phase);
            }
            if (!vis && m.in) {
                m.in = false;
                m.pass.set = have_prev ? refine_boundary(prev, obj, stations[k], lim, mask, false) : t;
                out.push_back(std::move(m.pass));
            }
        }
        prev = obj;
        have_prev = true;
    }
    for (auto& m : machines) {
        if (m.in) {
            m.pass.set = end;
            out.push_back(std::move(m.pass));
        }
    }
    return out;
}

std::vector<Pass> find_passes(const PopulationObject& obj, const Station& sta, const Epoch& start,
                              const Epoch& end, double step_s, const VisibilityLimits& lim,
                              const VisibilityMask& mask) {
    if (end.days - start.days > 90.0)
        throw std::invalid_argument("find_passes: window exceeds 90 days of secular validity");
    Network one{sta};
    auto traj = [&obj](const Epoch& t) { return secular_state_at(obj.truth, t); };
    return scan_passes(traj, one, start, end, step_s, lim, mask);
}

}  // namespace debrisim
