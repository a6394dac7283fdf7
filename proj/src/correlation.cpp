#include "debrisim/pipeline/correlation.hpp"

#include <algorithm>

namespace debrisim {

namespace {

void canonicalize(Correlation& c) {
    auto& t = c.orbit.trails;
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
}

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool overlaps(const std::vector<int>& a, const std::vector<int>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i;
        else ++j;
    }
    return false;
}

void sort_superior_first(std::vector<Correlation>& cs) {
    std::sort(cs.begin(), cs.end(), [](const Correlation& a, const Correlation& b) {
        if (a.orbit.trails.size() != b.orbit.trails.size())
            return a.orbit.trails.size() > b.orbit.trails.size();
        if (a.orbit.rms_arcsec != b.orbit.rms_arcsec) return a.orbit.rms_arcsec < b.orbit.rms_arcsec;
        return a.orbit.trails < b.orbit.trails;
    });
}

}  // namespace

std::vector<Correlation> manage_correlations(std::vector<Correlation> candidates,
                                             const MergeFit& merge_fit, const ManageOptions& opt) {
    for (auto& c : candidates) canonicalize(c);

    // A successful merge produces a new candidate that may overlap others, so
    // the greedy pass repeats until it runs merge-free. Each merge strictly
    // grows a trail set, which bounds the loop.
    bool merged_any = true;
    std::vector<Correlation> accepted;
    while (merged_any) {
        merged_any = false;

        // Canonical dedup: identical trail sets keep the better fit.
        std::sort(candidates.begin(), candidates.end(),
                  [](const Correlation& a, const Correlation& b) {
                      if (a.orbit.trails != b.orbit.trails) return a.orbit.trails < b.orbit.trails;
                      return a.orbit.rms_arcsec < b.orbit.rms_arcsec;
                  });
        candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                     [](const Correlation& a, const Correlation& b) {
                                         return a.orbit.trails == b.orbit.trails;
                                     }),
                         candidates.end());
        sort_superior_first(candidates);

        accepted.clear();
        for (auto& cand : candidates) {
            bool dropped = false;
            for (auto& acc : accepted) {
                if (is_subset(cand.orbit.trails, acc.orbit.trails)) {
                    dropped = true;  // inferior correlation
                    break;
                }
                if (!overlaps(cand.orbit.trails, acc.orbit.trails)) continue;

                // Discordant overlap: attempt a merge via a joint fit;
                // otherwise the accepted one is superior by sort order.
                Correlation merged;
                if (merge_fit && merge_fit(acc, cand, &merged)) {
                    canonicalize(merged);
                    merged.provenance = "merge(" + acc.provenance + "," + cand.provenance + ")";
                    acc = merged;
                    merged_any = true;
                }
                dropped = true;
                break;
            }
            if (!dropped) accepted.push_back(cand);
        }
        if (merged_any) candidates = accepted;
    }

    for (auto& c : accepted)
        c.orbit.status = status_for(c.orbit.trails.size(), true, opt.reliable_trails,
                                    opt.numbering_trails);
    std::sort(accepted.begin(), accepted.end(), [](const Correlation& a, const Correlation& b) {
        return a.orbit.trails < b.orbit.trails;
    });
    return accepted;
}

}  // namespace debrisim
