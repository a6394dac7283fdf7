#pragma once

#include <span>
#include <string>
#include <vector>

#include "debrisim/link/attributable.hpp"
#include "debrisim/obs/synthesize.hpp"
#include "debrisim/prop/numerical.hpp"

namespace debrisim {

enum class OrbitStatus { Preliminary, Pair, Reliable, Numbered };

const char* orbit_status_name(OrbitStatus s);

/// Least-squares orbit: the fit parameterization is the Cartesian state at
/// the (central) fit epoch, so near-circular orbits stay well conditioned.
/// The covariance is in state space (km, km/s); elements are derived.
struct OrbitEstimate {
    CartesianState state;
    KeplerianElements elements;
    Mat6 cov = Mat6::Zero();
    std::vector<int> trails;  // canonical: sorted attributable record ids
    double rms_arcsec = 0.0;
    OrbitStatus status = OrbitStatus::Preliminary;
};

struct FitOptions {
    int max_iterations = 15;
    double rel_correction_tol = 1e-10;
    double rms_change_tol = 1e-3;  // fraction of current RMS
    double outlier_sigma = 5.0;
    PropagationOptions prop;
};

struct FitResult {
    bool converged = false;
    OrbitEstimate estimate;
    int iterations = 0;
    double max_norm_residual = 0.0;  // max |residual|/sigma after the fit
    int outliers = 0;                // components beyond outlier_sigma
    std::string message;
};

/// Gauss-Newton differential correction of all attributable components under
/// the numerical J2 model, with step damping. Covariance = inverse normal
/// matrix; RMS is over the angle residuals, in arcsec.
FitResult differential_correction(const CartesianState& prelim,
                                  std::span<const Attributable> obs, const Network& net,
                                  const FitOptions& opt = {});

/// Predicted attributable (mean and covariance from the orbit covariance by
/// finite-difference sensitivity) at an epoch/station.
struct PredictedAttributable {
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();  // ra, dec, ra_dot, dec_dot
    Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
    TopocentricView view;
};

PredictedAttributable predict_attributable(const OrbitEstimate& orbit, const Epoch& t,
                                           const Station& sta,
                                           const PropagationOptions& prop = {});

OrbitStatus status_for(std::size_t trail_count, bool least_squares_confirmed,
                       int reliable_trails = 5, int numbering_trails = 10);

}  // namespace debrisim
