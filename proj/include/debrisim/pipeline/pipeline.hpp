#pragma once

#include <map>
#include <set>

#include "debrisim/link/linkage.hpp"
#include "debrisim/pipeline/attribution.hpp"
#include "debrisim/pipeline/correlation.hpp"

namespace debrisim {

struct PipelineOptions {
    double chi_attr_max = 5.0;
    double rms_gate_arcsec = 1.2;   // 3x the astrometric floor
    int reliable_trails = 5;
    int numbering_trails = 10;
    double link_window_days = 3.0;  // sliding pair-search window
    double link_min_gap_days = 0.05;
    double coarse_gate_deg = 3.0;   // cheap angular pre-gate for attribution
    bool use_prefilter = true;      // circular-radius band prefilter for pairs
    double prefilter_rel_band = 0.35;
    double prefilter_abs_band_km = 300.0;
    double refit_growth = 0.15;     // refit when trails grew by this fraction
    LinkOptions link;
    FitOptions fit;
};

/// The correlation data center: per-batch attribution to the known catalog
/// first, then pairwise linkage over the leftover pool, recursive growth of
/// new pairs, and correlation management. Deterministic; no internal
/// randomness.
class CorrelationPipeline {
public:
    CorrelationPipeline(Network net, PipelineOptions opt = {});

    /// Processes one batch (e.g. a day) of new attributables. Records must be
    /// unique and increasing across batches.
    void process_batch(const std::vector<Attributable>& batch);

    /// Final refits of any stale orbits and a closing management pass.
    void finalize();

    const std::vector<Correlation>& catalog() const { return catalog_; }
    const std::vector<std::string>& op_log() const { return op_log_; }
    const Network& network() const { return net_; }
    const std::vector<Attributable>& observations() const { return obs_store_; }
    /// Records not consumed by any correlation with >= 3 trails.
    std::vector<int> pending() const { return std::vector<int>(pending_.begin(), pending_.end()); }

    /// True iff the circular-radius prefilter would let this pair through.
    bool prefilter_pass(const Attributable& a, const Attributable& b) const;

private:
    std::vector<Attributable> lookup(const std::vector<int>& records) const;
    bool joint_fit(const CartesianState& prelim, const std::vector<int>& trails,
                   const std::string& provenance, Correlation* out) const;
    void attribution_phase(const std::vector<Attributable>& batch, std::vector<int>* leftovers);
    void linkage_phase(const std::vector<int>& leftovers);
    void manage(std::vector<Correlation> candidates);
    void refresh_pending();
    const std::vector<double>& radius_estimates(int record) const;

    Network net_;
    PipelineOptions opt_;
    std::vector<Attributable> obs_store_;      // indexed by record id
    std::vector<Correlation> catalog_;
    std::set<int> pending_;
    std::set<std::pair<int, int>> tried_pairs_;
    mutable std::map<int, std::vector<double>> radius_cache_;
    std::vector<std::string> op_log_;
    int batch_counter_ = 0;
};

/// Catalog text round trip (append-only record file; deterministic export).
std::string format_catalog(const std::vector<Correlation>& catalog);
std::vector<Correlation> parse_catalog(const std::string& path);

}  // namespace debrisim
