#pragma once

#include <functional>

#include "debrisim/pipeline/fit.hpp"

namespace debrisim {

/// A proposed or accepted association of trails with its orbit. Trail sets
/// are canonical (sorted, duplicate-free), so the same association built in
/// a different order normalizes identically.
struct Correlation {
    OrbitEstimate orbit;
    std::string provenance;
    /// Trail count at the last least-squares fit; trails attached through the
    /// Mahalanobis gate since then await the next scheduled refit.
    int fitted_trail_count = 0;
};

struct ManageOptions {
    int reliable_trails = 5;
    int numbering_trails = 10;
    double rms_gate_arcsec = 1.2;
};

/// Joint refit callback for merge attempts: receives the two discordant
/// correlations, returns the merged correlation (joint fit of the union of
/// their trails) on success.
using MergeFit = std::function<bool(const Correlation& a, const Correlation& b,
                                    Correlation* merged)>;

/// Correlation management: canonical deduplication, removal of correlations
/// whose trail set is a subset of an accepted one, merge attempts for
/// discordant overlapping correlations (more trails wins when the merge
/// fails, ties broken by lower RMS), and status/numbering by trail count.
/// The output is an antichain: no two accepted correlations share a trail.
std::vector<Correlation> manage_correlations(std::vector<Correlation> candidates,
                                             const MergeFit& merge_fit,
                                             const ManageOptions& opt = {});

}  // namespace debrisim
