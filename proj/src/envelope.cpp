#include <stdexcept>

#include <Eigen/Dense>

#include "debrisim/metrics/metrics.hpp"

namespace debrisim {

EnvelopeSpec envelope_for(OrbitClass cls) {
    EnvelopeSpec spec;
    if (cls != OrbitClass::LEO) spec.position_axes_m = Vec3(10.0, 60.0, 200.0);
    return spec;
}

namespace {

// sqrt(lambda_max) of P Gamma P^T with P = diag(1/axes).
double norm_against_axes(const Mat3& gamma_uvw, const Vec3& axes) {
    Mat3 scaled;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scaled(i, j) = gamma_uvw(i, j) / (axes[i] * axes[j]);
    const Eigen::SelfAdjointEigenSolver<Mat3> eig(scaled);
    return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

}  // namespace

EnvelopeNorm envelope_norm(const Mat6& cov_state, const CartesianState& state,
                           const EnvelopeSpec& spec) {
    const Eigen::LLT<Mat6> llt(cov_state);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("envelope_norm: covariance is not positive definite");

    // Object-centered frame: u radial, w along the angular momentum, v = w x u.
    const Vec3 u = state.r.normalized();
    const Vec3 w = state.r.cross(state.v).normalized();
    const Vec3 v = w.cross(u);
    Mat3 rot;  // rows u, v, w: maps inertial into {u,v,w}
    rot.row(0) = u;
    rot.row(1) = v;
    rot.row(2) = w;

    const Mat3 gamma_pos = rot * cov_state.topLeftCorner<3, 3>() * rot.transpose();
    const Mat3 gamma_vel = rot * cov_state.bottomRightCorner<3, 3>() * rot.transpose();

    EnvelopeNorm out;
    // Covariance is km^2 and km^2/s^2; axes are m and mm/s.
    out.position = norm_against_axes(gamma_pos * 1e6, spec.position_axes_m);
    out.velocity = norm_against_axes(gamma_vel * 1e12, spec.velocity_axes_mms);
    return out;
}

}  // namespace debrisim
