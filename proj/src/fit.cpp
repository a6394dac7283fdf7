#include "debrisim/pipeline/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace debrisim {

const char* orbit_status_name(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::Preliminary: return "preliminary";
        case OrbitStatus::Pair: return "pair";
        case OrbitStatus::Reliable: return "reliable";
        case OrbitStatus::Numbered: return "numbered";
    }
    return "?";
}

OrbitStatus status_for(std::size_t trail_count, bool least_squares_confirmed, int reliable_trails,
                       int numbering_trails) {
    if (!least_squares_confirmed) return OrbitStatus::Preliminary;
    if (trail_count >= static_cast<std::size_t>(numbering_trails)) return OrbitStatus::Numbered;
    if (trail_count >= static_cast<std::size_t>(reliable_trails)) return OrbitStatus::Reliable;
    return OrbitStatus::Pair;
}

namespace {

// Perturbation scales for the finite-difference Jacobian (per component,
// 1e-6 relative).
Eigen::Matrix<double, 6, 1> fd_steps(const CartesianState& s) {
    Eigen::Matrix<double, 6, 1> h;
    for (int i = 0; i < 3; ++i) h[i] = 1e-6 * std::max(std::abs(s.r[i]), 1.0);
    for (int i = 0; i < 3; ++i) h[3 + i] = 1e-6 * std::max(std::abs(s.v[i]), 1e-3);
    return h;
}

CartesianState apply_step(const CartesianState& s, int comp, double delta) {
    CartesianState out = s;
    if (comp < 3) out.r[comp] += delta;
    else out.v[comp - 3] += delta;
    return out;
}

Eigen::Vector4d view_components(const TopocentricView& v) {
    return {v.ra, v.dec, v.ra_dot, v.dec_dot};
}

Eigen::Vector4d wrap_residual(const Eigen::Vector4d& obs, const Eigen::Vector4d& pred) {
    Eigen::Vector4d r = obs - pred;
    r[0] = wrap_pm_pi(r[0]);
    r[1] = wrap_pm_pi(r[1]);
    return r;
}

struct ResidualPass {
    Eigen::VectorXd residuals;       // weighted, 4 per obs
    Eigen::MatrixXd jacobian;        // weighted, (4m x 6)
    double rms_arcsec = 0.0;         // angle components only, unweighted
    double max_norm_residual = 0.0;  // max |res|/sigma
    int outliers = 0;
    bool ok = false;
};

// One sweep over the (time-sorted) observations with the nominal state and
// the 12 perturbed companions; builds residuals and the FD Jacobian.
ResidualPass evaluate(const CartesianState& x0, std::span<const Attributable> obs,
                      const std::vector<std::size_t>& order, const Network& net,
                      const FitOptions& opt, bool with_jacobian, double outlier_sigma) {
    ResidualPass out;
    const std::size_t m = obs.size();
    out.residuals.resize(4 * m);
    if (with_jacobian) out.jacobian.resize(4 * m, 6);

    const auto h = fd_steps(x0);
    std::vector<J2Propagator> props;
    props.reserve(with_jacobian ? 13 : 1);
    props.emplace_back(x0, opt.prop);
    if (with_jacobian) {
        for (int j = 0; j < 6; ++j) {
            props.emplace_back(apply_step(x0, j, +h[j]), opt.prop);
            props.emplace_back(apply_step(x0, j, -h[j]), opt.prop);
        }
    }

    double angle_sq = 0.0;
    int angle_n = 0;
    try {
        for (std::size_t idx = 0; idx < m; ++idx) {
            const Attributable& a = obs[order[idx]];
            const CartesianState sta = geodetic_to_inertial(net[a.station], a.epoch);
            const TopocentricView nominal = apparent_view(props[0].advance_to(a.epoch), sta);
            const Eigen::Vector4d res = wrap_residual(a.components(), view_components(nominal));

            for (int c = 0; c < 4; ++c) {
                const double sigma = std::max(a.sigma[c], 1e-12);
                out.residuals[4 * order[idx] + c] = res[c] / sigma;
                out.max_norm_residual = std::max(out.max_norm_residual, std::abs(res[c]) / sigma);
                if (std::abs(res[c]) / sigma > outlier_sigma) ++out.outliers;
            }
            angle_sq += res[0] * res[0] + res[1] * res[1];
            angle_n += 2;

            if (with_jacobian) {
                for (int j = 0; j < 6; ++j) {
                    const TopocentricView vp =
                        apparent_view(props[1 + 2 * j].advance_to(a.epoch), sta);
                    const TopocentricView vm =
                        apparent_view(props[2 + 2 * j].advance_to(a.epoch), sta);
                    Eigen::Vector4d col = view_components(vp) - view_components(vm);
                    col[0] = wrap_pm_pi(col[0]);
                    col[1] = wrap_pm_pi(col[1]);
                    col /= 2.0 * h[j];
                    for (int c = 0; c < 4; ++c)
                        out.jacobian(4 * order[idx] + c, j) = col[c] / std::max(a.sigma[c], 1e-12);
                }
            }
        }
    } catch (const PropagationError&) {
        return out;  // ok = false
    }

    out.rms_arcsec = std::sqrt(angle_sq / std::max(angle_n, 1)) * kArcsecPerRad;
    out.ok = true;
    return out;
}

}  // namespace

FitResult differential_correction(const CartesianState& prelim, std::span<const Attributable> obs,
                                  const Network& net, const FitOptions& opt) {
    FitResult result;
    if (obs.size() < 2) {
        result.message = "underdetermined: need at least 2 attributables (8 measurements)";
        return result;
    }

    std::vector<std::size_t> order(obs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return obs[i].epoch.days < obs[j].epoch.days;
    });

    // Fit at the central observation epoch (shortest lever arms).
    const Epoch t_fit = obs[order[order.size() / 2]].epoch;
    CartesianState x;
    try {
        J2Propagator prop(prelim, opt.prop);
        x = prop.advance_to(t_fit);
    } catch (const PropagationError& e) {
        result.message = std::string("preliminary state propagation failed: ") + e.what();
        return result;
    }

    double rms_prev = std::numeric_limits<double>::infinity();
    int bad_steps = 0;

    for (int it = 0; it < opt.max_iterations; ++it) {
        result.iterations = it + 1;
        const ResidualPass pass = evaluate(x, obs, order, net, opt, true, opt.outlier_sigma);
        if (!pass.ok) {
            result.message = "propagation failed inside the fit";
            return result;
        }

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(pass.jacobian);
        if (qr.rank() < 6) {
            result.message = "rank-deficient normal matrix (rank " + std::to_string(qr.rank()) +
                             " of 6)";
            return result;
        }
        const Eigen::Matrix<double, 6, 1> dx = qr.solve(pass.residuals);

        // Damped step: keep halving while the RMS grows.
        const auto h = fd_steps(x);
        double lambda = 1.0;
        CartesianState x_new;
        ResidualPass after;
        for (int half = 0; half < 8; ++half) {
            x_new = x;
            x_new.r += lambda * dx.head<3>();
            x_new.v += lambda * dx.tail<3>();
            after = evaluate(x_new, obs, order, net, opt, false, opt.outlier_sigma);
            if (after.ok && after.residuals.norm() <= pass.residuals.norm()) break;
            lambda *= 0.5;
        }
        if (!after.ok) {
            result.message = "propagation failed inside the fit";
            return result;
        }

        const bool worse = after.rms_arcsec > pass.rms_arcsec * (1.0 + 1e-12);
        bad_steps = worse ? bad_steps + 1 : 0;
        if (bad_steps >= 3) {
            result.message = "divergence: RMS grew over 3 damped steps";
            return result;
        }

        x = x_new;
        double max_rel = 0.0;
        for (int j = 0; j < 6; ++j)
            max_rel = std::max(max_rel, std::abs(lambda * dx[j]) / (h[j] / 1e-6));
        const bool correction_small = max_rel < opt.rel_correction_tol;
        const bool rms_settled =
            std::isfinite(rms_prev) &&
            std::abs(rms_prev - after.rms_arcsec) < opt.rms_change_tol * std::max(after.rms_arcsec, 1e-12);
        rms_prev = after.rms_arcsec;

        if (correction_small || rms_settled) {
            result.converged = true;
            break;
        }
    }

    if (!result.converged) {
        result.message = "no convergence within iteration limit";
        return result;
    }

    // Final residuals + covariance at the converged state.
    const ResidualPass fin = evaluate(x, obs, order, net, opt, true, opt.outlier_sigma);
    if (!fin.ok) {
        result.converged = false;
        result.message = "propagation failed at the converged state";
        return result;
    }
    const Mat6 normal = fin.jacobian.transpose() * fin.jacobian;
    const Eigen::LDLT<Mat6> ldlt(normal);
    if (ldlt.info() != Eigen::Success) {
        result.converged = false;
        result.message = "normal matrix not positive definite";
        return result;
    }

    OrbitEstimate& est = result.estimate;
    est.state = x;
    est.elements = state_to_elements(x);
    est.cov = ldlt.solve(Mat6::Identity());
    est.rms_arcsec = fin.rms_arcsec;
    est.trails.clear();
    for (const auto& a : obs) est.trails.push_back(a.record);
    std::sort(est.trails.begin(), est.trails.end());
    est.trails.erase(std::unique(est.trails.begin(), est.trails.end()), est.trails.end());
    est.status = status_for(est.trails.size(), true);
    result.max_norm_residual = fin.max_norm_residual;
    result.outliers = fin.outliers;
    return result;
}

PredictedAttributable predict_attributable(const OrbitEstimate& orbit, const Epoch& t,
                                           const Station& sta, const PropagationOptions& prop) {
    PredictedAttributable out;
    const CartesianState sta_state = geodetic_to_inertial(sta, t);

    FitOptions fo;
    fo.prop = prop;
    const auto h = fd_steps(orbit.state);

    J2Propagator nominal(orbit.state, prop);
    out.view = apparent_view(nominal.advance_to(t), sta_state);
    out.mean = view_components(out.view);

    Eigen::Matrix<double, 4, 6> sens;
    for (int j = 0; j < 6; ++j) {
        J2Propagator pp(apply_step(orbit.state, j, +h[j]), prop);
        J2Propagator pm(apply_step(orbit.state, j, -h[j]), prop);
        Eigen::Vector4d col = view_components(apparent_view(pp.advance_to(t), sta_state)) -
                              view_components(apparent_view(pm.advance_to(t), sta_state));
        col[0] = wrap_pm_pi(col[0]);
        col[1] = wrap_pm_pi(col[1]);
        sens.col(j) = col / (2.0 * h[j]);
    }
    out.cov = sens * orbit.cov * sens.transpose();
    return out;
}

}  // namespace debrisim
