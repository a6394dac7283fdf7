#include <Eigen/Dense>

#include "debrisim/metrics/metrics.hpp"

namespace debrisim {

FeasibilityBounds tasking_feasibility(const OrbitEstimate& orbit, const FeasibilityOptions& opt) {
    FeasibilityBounds out;

    const double dt = opt.horizon_days * kSecPerDay;
    const Mat6 phi = state_transition(orbit.state, dt, opt.prop);
    const Mat6 cov_end = phi * orbit.cov * phi.transpose();
    const CartesianState end = propagate_numerical(orbit.state, dt, opt.prop);

    const Eigen::SelfAdjointEigenSolver<Mat3> eig_p(Mat3(cov_end.topLeftCorner<3, 3>()));
    const Eigen::SelfAdjointEigenSolver<Mat3> eig_v(Mat3(cov_end.bottomRightCorner<3, 3>()));
    const double lambda_p = std::max(0.0, eig_p.eigenvalues().maxCoeff());
    const double lambda_v = std::max(0.0, eig_v.eigenvalues().maxCoeff());

    const double h_p = state_to_elements(end).perigee_altitude();
    out.angular_bound_rad = std::sqrt(lambda_p) / h_p;
    out.velocity_bound_rel = std::sqrt(lambda_v) / end.v.norm();
    out.pass = out.velocity_bound_rel < opt.velocity_bound_max &&
               out.angular_bound_rad < opt.angular_bound_max_rad;
    return out;
}

}  // namespace debrisim
