#include "debrisim/pipeline/attribution.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace debrisim {

double attribution_distance(const PredictedAttributable& pred, const Attributable& a) {
    Eigen::Vector4d delta = a.components() - pred.mean;
    delta[0] = wrap_pm_pi(delta[0]);
    delta[1] = wrap_pm_pi(delta[1]);
    const Eigen::Matrix4d combined = pred.cov + a.covariance();
    const Eigen::Vector4d w = combined.ldlt().solve(delta);
    return std::sqrt(std::max(0.0, delta.dot(w)));
}

AttributionResult attribute(const OrbitEstimate& orbit, std::span<const Attributable> current_obs,
                            const Attributable& extra, const Network& net,
                            const AttributionOptions& opt) {
    AttributionResult out;

    for (const auto& a : current_obs) {
        if (a.record >= 0 && a.record == extra.record) {
            out.reason = "duplicate trail";
            return out;
        }
        if (a.station == extra.station &&
            std::abs(a.epoch.seconds_from(extra.epoch)) < 0.5) {
            out.reason = "duplicate trail (same station and epoch)";
            return out;
        }
    }

    PredictedAttributable pred;
    try {
        pred = predict_attributable(orbit, extra.epoch, net[extra.station], opt.fit.prop);
    } catch (const PropagationError& e) {
        out.reason = std::string("prediction failed: ") + e.what();
        return out;
    }
    out.mahalanobis = attribution_distance(pred, extra);
    if (!(out.mahalanobis <= opt.chi_attr_max)) {
        out.reason = "Mahalanobis gate";
        return out;
    }

    std::vector<Attributable> all(current_obs.begin(), current_obs.end());
    all.push_back(extra);
    const FitResult fit = differential_correction(orbit.state, all, net, opt.fit);
    if (!fit.converged) {
        out.reason = "refit failed: " + fit.message;
        return out;
    }
    if (fit.estimate.rms_arcsec > opt.rms_gate_arcsec) {
        out.reason = "refit RMS above gate";
        return out;
    }
    out.accepted = true;
    out.updated = fit.estimate;
    return out;
}

}  // namespace debrisim
