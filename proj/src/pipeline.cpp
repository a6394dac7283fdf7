#include "debrisim/pipeline/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "debrisim/prop/secular.hpp"
#include "debrisim/util/tabio.hpp"

namespace debrisim {

CorrelationPipeline::CorrelationPipeline(Network net, PipelineOptions opt)
    : net_(std::move(net)), opt_(opt) {}

std::vector<Attributable> CorrelationPipeline::lookup(const std::vector<int>& records) const {
    std::vector<Attributable> out;
    out.reserve(records.size());
    for (int r : records) out.push_back(obs_store_.at(static_cast<std::size_t>(r)));
    return out;
}

const std::vector<double>& CorrelationPipeline::radius_estimates(int record) const {
    auto it = radius_cache_.find(record);
    if (it == radius_cache_.end()) {
        const Attributable& a = obs_store_.at(static_cast<std::size_t>(record));
        it = radius_cache_
                 .emplace(record, circular_geocentric_radii(a, net_[a.station], opt_.link))
                 .first;
    }
    return it->second;
}

bool CorrelationPipeline::prefilter_pass(const Attributable& a, const Attributable& b) const {
    if (!opt_.use_prefilter) return true;
    const auto& ra = radius_estimates(a.record);
    const auto& rb = radius_estimates(b.record);
    if (ra.empty() || rb.empty()) return true;  // no circular solution: pass through
    for (double x : ra)
        for (double y : rb) {
            const double band =
                std::max(opt_.prefilter_rel_band * std::max(x, y), opt_.prefilter_abs_band_km);
            if (std::abs(x - y) <= band) return true;
        }
    return false;
}

bool CorrelationPipeline::joint_fit(const CartesianState& prelim, const std::vector<int>& trails,
                                    const std::string& provenance, Correlation* out) const {
    const auto obs = lookup(trails);
    FitResult fit = differential_correction(prelim, obs, net_, opt_.fit);
    if (!fit.converged || fit.estimate.rms_arcsec > opt_.rms_gate_arcsec) return false;
    out->orbit = fit.estimate;
    out->orbit.status = status_for(out->orbit.trails.size(), true, opt_.reliable_trails,
                                   opt_.numbering_trails);
    out->provenance = provenance;
    out->fitted_trail_count = static_cast<int>(out->orbit.trails.size());
    return true;
}

void CorrelationPipeline::attribution_phase(const std::vector<Attributable>& batch,
                                            std::vector<int>* leftovers) {
    // Candidate observations: the new batch plus the pending pool.
    std::vector<int> gate_set(pending_.begin(), pending_.end());
    for (const auto& a : batch) gate_set.push_back(a.record);
    std::sort(gate_set.begin(), gate_set.end());
    gate_set.erase(std::unique(gate_set.begin(), gate_set.end()), gate_set.end());

    struct Proposal {
        int orbit;
        int record;
        double distance;
    };
    std::vector<Proposal> proposals;

    for (std::size_t k = 0; k < catalog_.size(); ++k) {
        const OrbitEstimate& orbit = catalog_[k].orbit;

        // Cheap angular pre-gate on the secular prediction.
        std::vector<int> survivors;
        for (int rec : gate_set) {
            const Attributable& a = obs_store_[static_cast<std::size_t>(rec)];
            bool has = false;
            for (int t : orbit.trails) has = has || t == rec;
            if (has) continue;
            const CartesianState pred = secular_state_at(orbit.elements, a.epoch);
            const CartesianState sta = geodetic_to_inertial(net_[a.station], a.epoch);
            const Vec3 dir_pred = (pred.r - sta.r).normalized();
            const Vec3 dir_obs = radec_unit(a.ra, a.dec);
            const double sep = std::acos(std::clamp(dir_pred.dot(dir_obs), -1.0, 1.0));
            if (sep <= opt_.coarse_gate_deg * kRadPerDeg) survivors.push_back(rec);
        }
        if (survivors.empty()) continue;

        std::sort(survivors.begin(), survivors.end(), [&](int x, int y) {
            return obs_store_[static_cast<std::size_t>(x)].epoch.days <
                   obs_store_[static_cast<std::size_t>(y)].epoch.days;
        });
        for (int rec : survivors) {
            const Attributable& a = obs_store_[static_cast<std::size_t>(rec)];
            try {
                const PredictedAttributable pred =
                    predict_attributable(orbit, a.epoch, net_[a.station], opt_.fit.prop);
                const double d = attribution_distance(pred, a);
                if (d <= opt_.chi_attr_max) proposals.push_back({static_cast<int>(k), rec, d});
            } catch (const PropagationError&) {
            }
        }
    }

    // Each observation goes to the closest claiming orbit.
    std::sort(proposals.begin(), proposals.end(), [](const Proposal& a, const Proposal& b) {
        if (a.record != b.record) return a.record < b.record;
        return a.distance < b.distance;
    });
    std::map<int, std::vector<int>> assignments;  // orbit -> records
    std::set<int> consumed;
    for (std::size_t i = 0; i < proposals.size(); ++i) {
        if (i > 0 && proposals[i].record == proposals[i - 1].record) continue;
        assignments[proposals[i].orbit].push_back(proposals[i].record);
        consumed.insert(proposals[i].record);
    }

    // Attach and (when grown enough) refit.
    for (auto& [orbit_idx, records] : assignments) {
        Correlation& corr = catalog_[static_cast<std::size_t>(orbit_idx)];
        std::vector<int> attached;
        for (int rec : records) {
            const Attributable& a = obs_store_[static_cast<std::size_t>(rec)];
            bool dup = false;
            for (const auto& t : lookup(corr.orbit.trails))
                if (t.station == a.station && std::abs(t.epoch.seconds_from(a.epoch)) < 0.5)
                    dup = true;
            if (dup) {
                consumed.erase(rec);
                continue;
            }
            corr.orbit.trails.push_back(rec);
            attached.push_back(rec);
        }
        if (attached.empty()) continue;
        std::sort(corr.orbit.trails.begin(), corr.orbit.trails.end());

        const int grown = static_cast<int>(corr.orbit.trails.size()) - corr.fitted_trail_count;
        const bool want_refit =
            grown >= std::max(1.0, opt_.refit_growth * corr.fitted_trail_count);
        if (!want_refit) {
            corr.orbit.status = status_for(corr.orbit.trails.size(), true, opt_.reliable_trails,
                                           opt_.numbering_trails);
            continue;
        }

        Correlation refit;
        if (joint_fit(corr.orbit.state, corr.orbit.trails,
                      corr.provenance.empty() ? "attr" : corr.provenance, &refit)) {
            refit.provenance = corr.provenance;
            corr = refit;
        } else {
            // Recovery: back out this round's attachments and retry them
            // one at a time through the full attribution test.
            for (int rec : attached) {
                corr.orbit.trails.erase(
                    std::remove(corr.orbit.trails.begin(), corr.orbit.trails.end(), rec),
                    corr.orbit.trails.end());
                consumed.erase(rec);
            }
            AttributionOptions ao;
            ao.chi_attr_max = opt_.chi_attr_max;
            ao.rms_gate_arcsec = opt_.rms_gate_arcsec;
            ao.fit = opt_.fit;
            for (int rec : attached) {
                const auto current = lookup(corr.orbit.trails);
                const AttributionResult res =
                    attribute(corr.orbit, current, obs_store_[static_cast<std::size_t>(rec)],
                              net_, ao);
                if (res.accepted) {
                    corr.orbit = res.updated;
                    corr.fitted_trail_count = static_cast<int>(corr.orbit.trails.size());
                    consumed.insert(rec);
                }
            }
            corr.orbit.status = status_for(corr.orbit.trails.size(), true, opt_.reliable_trails,
                                           opt_.numbering_trails);
        }
    }

    for (int rec : gate_set)
        if (!consumed.count(rec)) leftovers->push_back(rec);
}

void CorrelationPipeline::linkage_phase(const std::vector<int>& leftovers) {
    std::vector<int> pool = leftovers;
    std::sort(pool.begin(), pool.end());

    std::vector<Correlation> fresh;
    std::set<int> used;  // records consumed by fresh correlations this phase

    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used.count(pool[i])) continue;
        const Attributable& a1 = obs_store_[static_cast<std::size_t>(pool[i])];
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            if (used.count(pool[i])) break;
            if (used.count(pool[j])) continue;
            const Attributable& a2 = obs_store_[static_cast<std::size_t>(pool[j])];
            const double gap = std::abs(a2.epoch.days - a1.epoch.days);
            if (gap < opt_.link_min_gap_days || gap > opt_.link_window_days) continue;
            const auto key = std::minmax(pool[i], pool[j]);
            if (tried_pairs_.count(key)) continue;
            tried_pairs_.insert(key);
            if (!prefilter_pass(a1, a2)) continue;

            const auto candidates =
                link_j2(a1, net_[a1.station], a2, net_[a2.station], opt_.link);
            if (candidates.empty()) continue;

            // Least-squares confirmation of the best candidate.
            const LinkageCandidate& best = candidates.front();
            Correlation pair;
            if (!joint_fit(elements_to_state(best.el1), {pool[i], pool[j]}, "link", &pair))
                continue;

            // Recursive growth from the remaining pool.
            AttributionOptions ao;
            ao.chi_attr_max = opt_.chi_attr_max;
            ao.rms_gate_arcsec = opt_.rms_gate_arcsec;
            ao.fit = opt_.fit;
            for (std::size_t m = 0; m < pool.size(); ++m) {
                if (pool[m] == pool[i] || pool[m] == pool[j] || used.count(pool[m])) continue;
                const Attributable& a3 = obs_store_[static_cast<std::size_t>(pool[m])];
                const auto current = lookup(pair.orbit.trails);
                const AttributionResult res = attribute(pair.orbit, current, a3, net_, ao);
                if (res.accepted) {
                    pair.orbit = res.updated;
                    pair.fitted_trail_count = static_cast<int>(pair.orbit.trails.size());
                    pair.provenance = "link+attr";
                    used.insert(pool[m]);
                }
            }
            pair.orbit.status = status_for(pair.orbit.trails.size(), true, opt_.reliable_trails,
                                           opt_.numbering_trails);
            fresh.push_back(pair);
            if (pair.orbit.trails.size() >= 3) {
                used.insert(pool[i]);
                used.insert(pool[j]);
            }
            break;  // a1 is linked; move on
        }
    }

    if (!fresh.empty() || !catalog_.empty()) {
        std::vector<Correlation> all = catalog_;
        all.insert(all.end(), fresh.begin(), fresh.end());
        manage(std::move(all));
    }
}

void CorrelationPipeline::manage(std::vector<Correlation> candidates) {
    ManageOptions mo;
    mo.reliable_trails = opt_.reliable_trails;
    mo.numbering_trails = opt_.numbering_trails;
    mo.rms_gate_arcsec = opt_.rms_gate_arcsec;
    auto merge = [this](const Correlation& a, const Correlation& b, Correlation* merged) {
        const Correlation& bigger = a.orbit.trails.size() >= b.orbit.trails.size() ? a : b;
        std::vector<int> joint;
        std::set_union(a.orbit.trails.begin(), a.orbit.trails.end(), b.orbit.trails.begin(),
                       b.orbit.trails.end(), std::back_inserter(joint));
        return joint_fit(bigger.orbit.state, joint, "merge", merged);
    };
    catalog_ = manage_correlations(std::move(candidates), merge, mo);
    refresh_pending();
}

void CorrelationPipeline::refresh_pending() {
    std::set<int> consumed;
    for (const auto& c : catalog_)
        if (c.orbit.trails.size() >= 3)
            consumed.insert(c.orbit.trails.begin(), c.orbit.trails.end());
    pending_.clear();
    for (const auto& a : obs_store_)
        if (!consumed.count(a.record)) pending_.insert(a.record);
}

void CorrelationPipeline::process_batch(const std::vector<Attributable>& batch) {
    ++batch_counter_;
    for (const auto& a : batch) {
        if (a.record != static_cast<int>(obs_store_.size()))
            throw std::invalid_argument("pipeline: batch records must be dense and increasing");
        obs_store_.push_back(a);
    }

    op_log_.push_back(strprintf("batch %d: attribution", batch_counter_));
    std::vector<int> leftovers;
    attribution_phase(batch, &leftovers);

    op_log_.push_back(strprintf("batch %d: linkage", batch_counter_));
    linkage_phase(leftovers);
    refresh_pending();
}

void CorrelationPipeline::finalize() {
    op_log_.push_back("finalize: refit");
    for (auto& corr : catalog_) {
        if (corr.fitted_trail_count == static_cast<int>(corr.orbit.trails.size())) continue;
        Correlation refit;
        if (joint_fit(corr.orbit.state, corr.orbit.trails, corr.provenance, &refit)) {
            refit.provenance = corr.provenance;
            corr = refit;
        }
    }
    op_log_.push_back("finalize: manage");
    manage(catalog_);
}

std::string format_catalog(const std::vector<Correlation>& catalog) {
    std::string out =
        "# status rms_arcsec provenance fitted n trails... epoch_days r_km(3) v_kms(3)"
        " cov_state_lower(21)\n";
    for (const auto& c : catalog) {
        out += orbit_status_name(c.orbit.status);
        out += strprintf(" %.6f %s %d %zu", c.orbit.rms_arcsec,
                         c.provenance.empty() ? "-" : c.provenance.c_str(),
                         c.fitted_trail_count, c.orbit.trails.size());
        for (int t : c.orbit.trails) out += strprintf(" %d", t);
        out += strprintf(" %.9f", c.orbit.state.epoch.days);
        for (int i = 0; i < 3; ++i) out += strprintf(" %.9e", c.orbit.state.r[i]);
        for (int i = 0; i < 3; ++i) out += strprintf(" %.9e", c.orbit.state.v[i]);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j <= i; ++j) out += strprintf(" %.9e", c.orbit.cov(i, j));
        out += "\n";
    }
    return out;
}

std::vector<Correlation> parse_catalog(const std::string& path) {
    std::vector<Correlation> out;
    for (const auto& row : read_table(path)) {
        Correlation c;
        std::size_t f = 0;
        const std::string status = row.fields.at(f++);
        c.orbit.rms_arcsec = parse_double(row, f++, "rms");
        c.provenance = row.fields.at(f++);
        if (c.provenance == "-") c.provenance.clear();
        c.fitted_trail_count = parse_int(row, f++, "fitted");
        const int n = parse_int(row, f++, "n_trails");
        for (int i = 0; i < n; ++i) c.orbit.trails.push_back(parse_int(row, f++, "trail"));
        c.orbit.state.epoch.days = parse_double(row, f++, "epoch");
        for (int i = 0; i < 3; ++i) c.orbit.state.r[i] = parse_double(row, f++, "r");
        for (int i = 0; i < 3; ++i) c.orbit.state.v[i] = parse_double(row, f++, "v");
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j <= i; ++j) {
                c.orbit.cov(i, j) = parse_double(row, f++, "cov");
                c.orbit.cov(j, i) = c.orbit.cov(i, j);
            }
        c.orbit.elements = state_to_elements(c.orbit.state);
        if (status == "preliminary") c.orbit.status = OrbitStatus::Preliminary;
        else if (status == "pair") c.orbit.status = OrbitStatus::Pair;
        else if (status == "reliable") c.orbit.status = OrbitStatus::Reliable;
        else if (status == "numbered") c.orbit.status = OrbitStatus::Numbered;
        else throw IoError("catalog line " + std::to_string(row.line) + ": unknown status " + status);
        out.push_back(c);
    }
    return out;
}

}  // namespace debrisim
