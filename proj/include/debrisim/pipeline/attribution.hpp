#pragma once

#include "debrisim/pipeline/fit.hpp"

namespace debrisim {

struct AttributionOptions {
    double chi_attr_max = 5.0;      // Mahalanobis gate on the predicted attributable
    double rms_gate_arcsec = 1.2;   // post-fit quality gate (3x astrometric floor)
    FitOptions fit;
};

struct AttributionResult {
    bool accepted = false;
    double mahalanobis = 0.0;
    OrbitEstimate updated;  // valid when accepted
    std::string reason;     // populated on rejection
};

/// Tests one further attributable against an orbit: Mahalanobis gate on the
/// predicted attributable under the combined covariance, then differential
/// correction with the new trail included and the RMS quality gate.
AttributionResult attribute(const OrbitEstimate& orbit,
                            std::span<const Attributable> current_obs, const Attributable& extra,
                            const Network& net, const AttributionOptions& opt = {});

/// Mahalanobis distance of an attributable against a prediction.
double attribution_distance(const PredictedAttributable& pred, const Attributable& a);

}  // namespace debrisim
