#pragma once

#include <string>
#include <vector>

#include "debrisim/pipeline/pipeline.hpp"
#include "debrisim/survey/population.hpp"

namespace debrisim {

enum class OrbitClass { LEO, PLEO, HLEO };

const char* orbit_class_name(OrbitClass c);

/// Orbital-class partition of the study region. Objects with perigee height
/// >= 2000 km are outside the region; out_of_region reports that.
struct Classification {
    OrbitClass cls = OrbitClass::LEO;
    bool out_of_region = false;
};
Classification classify(const KeplerianElements& el);

/// Radar comparison curve d_min(h_p) = (h_p/h_ref)^2 d_ref.
struct RadarCurve {
    double h_ref_km = 2000.0;
    double d_ref_cm = 20.0;  // enhanced radar; baseline uses 32 cm
};
double radar_min_diameter_cm(double perigee_height_km, const RadarCurve& curve);

/// Requirement ellipsoid semi-axes in the object-centered {u,v,w} frame
/// (u radial, w along angular momentum, v = w x u).
struct EnvelopeSpec {
    Vec3 position_axes_m{4.0, 30.0, 20.0};     // LEO default; PLEO (10, 60, 200)
    Vec3 velocity_axes_mms{20.0, 4.0, 20.0};   // shared by LEO and PLEO
};
EnvelopeSpec envelope_for(OrbitClass cls);

struct EnvelopeNorm {
    double position = 0.0;
    double velocity = 0.0;
    bool inside() const { return position <= 1.0 && velocity <= 1.0; }
};

/// Accuracy envelope norm: sqrt of the maximum eigenvalue of
/// P_req Gamma_conf P_req^T for the position and velocity marginals rotated
/// into {u,v,w}. <= 1 iff the confidence ellipsoid fits inside the envelope.
/// Throws std::invalid_argument for a non-SPD covariance.
EnvelopeNorm envelope_norm(const Mat6& cov_state, const CartesianState& state,
                           const EnvelopeSpec& spec);

struct FeasibilityBounds {
    double angular_bound_rad = 0.0;   // sqrt(lambda_P)/h_p
    double velocity_bound_rel = 0.0;  // sqrt(lambda_V)/|v|
    bool pass = false;
};

struct FeasibilityOptions {
    double horizon_days = 7.0;
    double velocity_bound_max = 7.5e-4;
    double angular_bound_max_rad = 0.0582;  // half of the 6.7 deg field
    PropagationOptions prop;
};

/// Propagates the orbit covariance to the end of the horizon and checks the
/// tasking bounds (single-pixel tracking and field capture).
FeasibilityBounds tasking_feasibility(const OrbitEstimate& orbit,
                                      const FeasibilityOptions& opt = {});

/// Per-class catalog build-up efficiency, weighted by sampling factors.
struct EfficiencyCell {
    double weight_total = 0.0;
    double weight_cataloged = 0.0;
    int objects_total = 0;
    int objects_cataloged = 0;
    int observed_uncataloged = 0;
    int never_observed = 0;
    double efficiency() const {
        return weight_total > 0.0 ? weight_cataloged / weight_total : 0.0;
    }
};

struct EfficiencyReport {
    // Rows: Total, LEO, PLEO, HLEO; first set over all objects, second set
    // restricted to objects above the enhanced-radar curve.
    EfficiencyCell all[4];
    EfficiencyCell above_radar[4];
    RadarCurve curve;
    int min_trails = 3;
};

/// Scores a catalog against the truth sidecar: an object counts as cataloged
/// when an accepted correlation with >= min_trails trails has a majority of
/// its trails from that object.
EfficiencyReport efficiency_report(const std::vector<Correlation>& catalog,
                                   const std::vector<int>& sidecar, const Population& pop,
                                   const RadarCurve& curve = {}, int min_trails = 3);

std::string format_efficiency(const EfficiencyReport& rep);

/// Majority truth object of a correlation (-1 when the sidecar is shorter
/// than the trail records demand).
int majority_object(const Correlation& corr, const std::vector<int>& sidecar);

/// True iff every trail of the correlation belongs to one truth object.
bool is_pure(const Correlation& corr, const std::vector<int>& sidecar);

}  // namespace debrisim
