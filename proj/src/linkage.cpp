#include "debrisim/link/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "debrisim/util/tabio.hpp"

namespace debrisim {

namespace {

Vec3 rotate_z(const Vec3& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Vec3(c * v.x() - s * v.y(), s * v.x() + c * v.y(), v.z());
}

// Coefficient vectors of one side after the node rotation, plus their
// projections on the direction orthogonal to both rotated D's:
//   f(rho) = fa rho^2 + fb rho + fc  (the u-component of c without the
//   rho_dot term, which u annihilates).
struct SideCoeffs {
    Vec3 D, E, F, G;
    double fa = 0, fb = 0, fc = 0;
};

struct PairSystem {
    const IntegralsCoefficients* ic1 = nullptr;
    const IntegralsCoefficients* ic2 = nullptr;
    SideCoeffs s1, s2;
    Vec3 u = Vec3::Zero();
    double gram_det_floor = 0.0;
    bool degenerate = false;
};

PairSystem build_system(const IntegralsCoefficients& ic1, const IntegralsCoefficients& ic2,
                        double delta_node) {
    PairSystem sys;
    sys.ic1 = &ic1;
    sys.ic2 = &ic2;
    const double half = 0.5 * delta_node;
    sys.s1 = {rotate_z(ic1.D, half), rotate_z(ic1.E, half), rotate_z(ic1.F, half),
              rotate_z(ic1.G, half)};
    sys.s2 = {rotate_z(ic2.D, -half), rotate_z(ic2.E, -half), rotate_z(ic2.F, -half),
              rotate_z(ic2.G, -half)};

    const Vec3 cross = sys.s1.D.cross(sys.s2.D);
    const double scale = sys.s1.D.norm() * sys.s2.D.norm();
    if (cross.norm() < 1e-10 * scale || scale == 0.0) {
        sys.degenerate = true;  // parallel line-of-sight moment arms
        return sys;
    }
    sys.u = cross.normalized();
    sys.s1.fa = sys.u.dot(sys.s1.E);
    sys.s1.fb = sys.u.dot(sys.s1.F);
    sys.s1.fc = sys.u.dot(sys.s1.G);
    sys.s2.fa = sys.u.dot(sys.s2.E);
    sys.s2.fb = sys.u.dot(sys.s2.F);
    sys.s2.fc = sys.u.dot(sys.s2.G);
    sys.gram_det_floor = 1e-12 * scale * scale;
    return sys;
}

// Range rates from the two in-plane components of the angular-momentum
// equality. Returns false when the Gram system is degenerate.
bool solve_rates(const PairSystem& sys, double rho1, double rho2, double* rd1, double* rd2) {
    const Vec3 w1 = sys.s1.E * (rho1 * rho1) + sys.s1.F * rho1 + sys.s1.G;
    const Vec3 w2 = sys.s2.E * (rho2 * rho2) + sys.s2.F * rho2 + sys.s2.G;
    const Vec3 rhs = w2 - w1;  // D1' rd1 - D2' rd2 = w2 - w1
    const double a11 = sys.s1.D.squaredNorm();
    const double a12 = -sys.s1.D.dot(sys.s2.D);
    const double a22 = sys.s2.D.squaredNorm();
    const double det = a11 * a22 - a12 * a12;
    if (std::abs(det) <= sys.gram_det_floor) return false;
    const double b1 = sys.s1.D.dot(rhs);
    const double b2 = -sys.s2.D.dot(rhs);
    *rd1 = (a22 * b1 - a12 * b2) / det;
    *rd2 = (a11 * b2 - a12 * b1) / det;
    return true;
}

double curve_f(const SideCoeffs& s, double rho) { return (s.fa * rho + s.fb) * rho + s.fc; }

// Energy mismatch on the angular-momentum curve.
bool energy_gap(const PairSystem& sys, double rho1, double rho2, double* gap, double* rd1,
                double* rd2) {
    if (!solve_rates(sys, rho1, rho2, rd1, rd2)) return false;
    *gap = two_body_energy(*sys.ic1, rho1, *rd1) - two_body_energy(*sys.ic2, rho2, *rd2);
    return true;
}

struct RawSolution {
    double rho1 = 0, rd1 = 0, rho2 = 0, rd2 = 0;
};

// rho1 on a quadratic branch of the projected curve for given rho2.
// branch: +1 / -1 selects the quadratic root, 0 the linear case.
bool branch_rho1(const PairSystem& sys, double rho2, int branch, double* rho1) {
    const double target = curve_f(sys.s2, rho2) - sys.s1.fc;
    const double a = sys.s1.fa, b = sys.s1.fb;
    const double ascale = std::abs(sys.s1.fa) + std::abs(sys.s2.fa);
    if (std::abs(a) > 1e-14 * std::max(1.0, ascale)) {
        const double disc = b * b + 4.0 * a * target;
        if (disc < 0.0) return false;
        const double sq = std::sqrt(disc);
        // Numerically stable quadratic roots.
        const double qq = -0.5 * (b + (b >= 0.0 ? sq : -sq));
        const double r_near = qq / a;
        const double r_far = qq != 0.0 ? target / qq : 0.0;
        if (branch == 0) return false;
        *rho1 = branch > 0 ? std::max(r_near, r_far) : std::min(r_near, r_far);
        return true;
    }
    if (std::abs(b) > 1e-14) {
        if (branch != 0) return false;
        *rho1 = target / b;
        return true;
    }
    return false;
}

// 2D Newton polish of (curve, energy) = 0 from a bracketing estimate.
bool newton_polish(const PairSystem& sys, double* rho1, double* rho2, double* rd1, double* rd2,
                   double rho_min, double rho_max) {
    double x = *rho1, y = *rho2;
    for (int it = 0; it < 12; ++it) {
        double g0, r1d, r2d;
        const double q0 = curve_f(sys.s1, x) - curve_f(sys.s2, y);
        if (!energy_gap(sys, x, y, &g0, &r1d, &r2d)) return false;
        const double hx = 1e-7 * std::max(std::abs(x), 1.0);
        const double hy = 1e-7 * std::max(std::abs(y), 1.0);
        double gpx, gmx, gpy, gmy, d1, d2;
        if (!energy_gap(sys, x + hx, y, &gpx, &d1, &d2)) return false;
        if (!energy_gap(sys, x - hx, y, &gmx, &d1, &d2)) return false;
        if (!energy_gap(sys, x, y + hy, &gpy, &d1, &d2)) return false;
        if (!energy_gap(sys, x, y - hy, &gmy, &d1, &d2)) return false;
        const double j11 = 2.0 * sys.s1.fa * x + sys.s1.fb;
        const double j12 = -(2.0 * sys.s2.fa * y + sys.s2.fb);
        const double j21 = (gpx - gmx) / (2.0 * hx);
        const double j22 = (gpy - gmy) / (2.0 * hy);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) return false;
        double dx = -(j22 * q0 - j12 * g0) / det;
        double dy = -(-j21 * q0 + j11 * g0) / det;
        // Damp into the admissible quadrant.
        double lambda = 1.0;
        while ((x + lambda * dx <= 0.0 || y + lambda * dy <= 0.0) && lambda > 1e-4) lambda *= 0.5;
        x += lambda * dx;
        y += lambda * dy;
        if (std::abs(dx) < 1e-10 * std::max(1.0, std::abs(x)) &&
            std::abs(dy) < 1e-10 * std::max(1.0, std::abs(y)))
            break;
    }
    if (!(x > 0.0 && y > 0.0)) return false;
    if (x < 0.5 * rho_min || x > 2.0 * rho_max || y < 0.5 * rho_min || y > 2.0 * rho_max)
        return false;
    double gap;
    if (!energy_gap(sys, x, y, &gap, rd1, rd2)) return false;
    *rho1 = x;
    *rho2 = y;
    return true;
}

// All positive-range solutions of the (rotated) integrals system: scan the
// projected angular-momentum curve branch-wise in rho2, root-find the energy
// gap along each branch, polish with Newton.
std::vector<RawSolution> solve_system(const PairSystem& sys, const LinkOptions& opt) {
    std::vector<RawSolution> out;
    if (sys.degenerate) return out;

    const double lmin = std::log(opt.rho_min), lmax = std::log(opt.rho_max);
    const int n = std::max(opt.scan_nodes, 16);

    for (int branch : {+1, -1, 0}) {
        bool have_prev = false;
        double prev_rho2 = 0, prev_gap = 0, prev_rho1 = 0;
        for (int i = 0; i < n; ++i) {
            const double rho2 = std::exp(lmin + (lmax - lmin) * i / (n - 1));
            double rho1, gap, rd1, rd2;
            bool valid = branch_rho1(sys, rho2, branch, &rho1) && rho1 >= opt.rho_min &&
                         rho1 <= opt.rho_max && energy_gap(sys, rho1, rho2, &gap, &rd1, &rd2);
            if (valid && have_prev && prev_gap * gap <= 0.0 && (prev_gap != 0.0 || gap != 0.0)) {
                // Bisect the energy gap along the branch.
                double lo = prev_rho2, hi = rho2, glo = prev_gap;
                double root_rho1 = rho1;
                for (int k = 0; k < 60; ++k) {
                    const double mid = 0.5 * (lo + hi);
                    double r1m, gm, d1, d2;
                    if (!branch_rho1(sys, mid, branch, &r1m) ||
                        !energy_gap(sys, r1m, mid, &gm, &d1, &d2))
                        break;
                    root_rho1 = r1m;
                    if (glo * gm <= 0.0) hi = mid;
                    else {
                        lo = mid;
                        glo = gm;
                    }
                    if (hi - lo < 1e-10 * hi) break;
                }
                RawSolution s;
                s.rho1 = root_rho1;
                s.rho2 = 0.5 * (lo + hi);
                if (newton_polish(sys, &s.rho1, &s.rho2, &s.rd1, &s.rd2, opt.rho_min,
                                  opt.rho_max) &&
                    s.rho1 > 0.0 && s.rho2 > 0.0)
                    out.push_back(s);
            }
            have_prev = valid;
            prev_rho2 = rho2;
            prev_gap = gap;
            prev_rho1 = rho1;
        }
    }

    // Deduplicate (branch overlap near disc = 0 and Newton convergence to
    // the same point).
    std::sort(out.begin(), out.end(),
              [](const RawSolution& a, const RawSolution& b) { return a.rho2 < b.rho2; });
    std::vector<RawSolution> dedup;
    for (const auto& s : out) {
        bool dup = false;
        for (const auto& d : dedup)
            if (std::abs(s.rho1 - d.rho1) < 1e-4 * (1.0 + d.rho1) &&
                std::abs(s.rho2 - d.rho2) < 1e-4 * (1.0 + d.rho2))
                dup = true;
        if (!dup) dedup.push_back(s);
    }
    return dedup;
}

struct Shared {
    IntegralsCoefficients ic1, ic2;
    double t1_days = 0, t2_days = 0;
};

double light_time_dtbar_seconds(const Shared& sh, double rho1, double rho2, bool enabled) {
    double dt = (sh.t1_days - sh.t2_days) * kSecPerDay;
    if (enabled) dt -= (rho1 - rho2) / kEarth.light_speed;
    return dt;
}

// K-corrected compatibility residuals (d_omega, d_ell), wrapped.
Eigen::Vector2d compatibility_delta(const KeplerianElements& el1, const KeplerianElements& el2,
                                    double K, double dtbar_s) {
    const SecularRates rates = secular_rates(el1);
    double c_omega = rates.c_omega, c_ell = rates.c_ell;
    if (!rates.coeffs_valid) {
        // Polar limit: K -> 0 there as well, so the correction terms vanish.
        c_omega = 0.0;
        c_ell = 0.0;
    }
    Eigen::Vector2d d;
    d[0] = wrap_pm_pi(el1.argp - el2.argp - K * c_omega * dtbar_s);
    d[1] = wrap_pm_pi(el1.mean_anom - el2.mean_anom - (rates.n + K * c_ell) * dtbar_s);
    return d;
}

struct Solution {
    RawSolution ranges;
    KeplerianElements el1, el2;
    Eigen::Vector2d delta;
    double chi_sel = 0.0;
    bool elliptic = false;
};

// Elements at the light-time corrected epochs for one raw solution.
bool make_elements(const Shared& sh, const RawSolution& rs, bool light_time,
                   KeplerianElements* el1, KeplerianElements* el2) {
    CartesianState s1 = state_from_ranges(sh.ic1, rs.rho1, rs.rd1);
    CartesianState s2 = state_from_ranges(sh.ic2, rs.rho2, rs.rd2);
    if (light_time) {
        s1.epoch = s1.epoch.plus_seconds(-rs.rho1 / kEarth.light_speed);
        s2.epoch = s2.epoch.plus_seconds(-rs.rho2 / kEarth.light_speed);
    }
    try {
        *el1 = state_to_elements(s1);
        *el2 = state_to_elements(s2);
    } catch (const ConversionError&) {
        return false;
    }
    return true;
}

std::vector<Solution> elaborate(const Shared& sh, const std::vector<RawSolution>& raw, double K,
                                const LinkOptions& opt, const Eigen::Matrix2d* gamma_sel) {
    std::vector<Solution> out;
    for (const auto& rs : raw) {
        Solution sol;
        sol.ranges = rs;
        if (!make_elements(sh, rs, opt.light_time, &sol.el1, &sol.el2)) continue;
        sol.elliptic = true;
        const double dtbar = light_time_dtbar_seconds(sh, rs.rho1, rs.rho2, opt.light_time);
        sol.delta = compatibility_delta(sol.el1, sol.el2, K, dtbar);
        if (gamma_sel) {
            const Eigen::Vector2d w = gamma_sel->ldlt().solve(sol.delta);
            sol.chi_sel = std::sqrt(std::max(0.0, sol.delta.dot(w)));
        } else {
            sol.chi_sel = sol.delta.norm();
        }
        out.push_back(sol);
    }
    return out;
}

// Finite-difference sensitivity of a functional of the re-solved system with
// respect to the 8 attributable components. Returns false if any re-solve
// fails. Rows = dimension of the functional's output.
template <int Rows, typename Fn>
bool fd_sensitivity(const Attributable& a1, const Attributable& a2, const Shared& sh, double K,
                    const RawSolution& base, const LinkOptions& opt,
                    Eigen::Matrix<double, Rows, 8>* jac, Fn&& functional) {
    for (int j = 0; j < 8; ++j) {
        const bool first = j < 4;
        const Attributable& a = first ? a1 : a2;
        const int c = j % 4;
        const double h = std::max(a.sigma[c], 1e-10);
        Eigen::Matrix<double, Rows, 1> plus, minus;
        for (int sign : {+1, -1}) {
            Attributable ap1 = a1, ap2 = a2;
            double* field = nullptr;
            Attributable& target = first ? ap1 : ap2;
            switch (c) {
                case 0: field = &target.ra; break;
                case 1: field = &target.dec; break;
                case 2: field = &target.ra_dot; break;
                default: field = &target.dec_dot; break;
            }
            *field += sign * h;
            Shared shp = sh;
            shp.ic1 = integrals_coefficients(ap1, sh.ic1.station_state);
            shp.ic2 = integrals_coefficients(ap2, sh.ic2.station_state);
            const double dtbar0 = light_time_dtbar_seconds(shp, base.rho1, base.rho2, opt.light_time);
            PairSystem sys = build_system(shp.ic1, shp.ic2, -K * dtbar0);
            if (sys.degenerate) return false;
            RawSolution rs = base;
            if (!newton_polish(sys, &rs.rho1, &rs.rho2, &rs.rd1, &rs.rd2, opt.rho_min,
                               opt.rho_max))
                return false;
            Eigen::Matrix<double, Rows, 1> value;
            if (!functional(shp, rs, value)) return false;
            (sign > 0 ? plus : minus) = value;
        }
        jac->col(j) = (plus - minus) / (2.0 * h);
    }
    return true;
}

bool delta_covariance(const Attributable& a1, const Attributable& a2, const Shared& sh, double K,
                      const RawSolution& base, const LinkOptions& opt, Eigen::Matrix2d* gamma) {
    Eigen::Matrix<double, 2, 8> jac;
    auto functional = [&](const Shared& shp, const RawSolution& rs, Eigen::Vector2d& value) {
        KeplerianElements e1, e2;
        if (!make_elements(shp, rs, opt.light_time, &e1, &e2)) return false;
        const double dtbar = light_time_dtbar_seconds(shp, rs.rho1, rs.rho2, opt.light_time);
        value = compatibility_delta(e1, e2, K, dtbar);
        return true;
    };
    if (!fd_sensitivity<2>(a1, a2, sh, K, base, opt, &jac, functional)) return false;
    Eigen::Matrix<double, 8, 1> var;
    var << a1.sigma.cwiseProduct(a1.sigma), a2.sigma.cwiseProduct(a2.sigma);
    *gamma = jac * var.asDiagonal() * jac.transpose();
    return true;
}

bool element_covariance(const Attributable& a1, const Attributable& a2, const Shared& sh,
                        double K, const RawSolution& base, const LinkOptions& opt,
                        const KeplerianElements& el_ref, Mat6* cov) {
    Eigen::Matrix<double, 6, 8> jac;
    auto functional = [&](const Shared& shp, const RawSolution& rs,
                          Eigen::Matrix<double, 6, 1>& value) {
        KeplerianElements e1, e2;
        if (!make_elements(shp, rs, opt.light_time, &e1, &e2)) return false;
        value << e1.a, e1.e, e1.inc, wrap_pm_pi(e1.raan - el_ref.raan),
            wrap_pm_pi(e1.argp - el_ref.argp), wrap_pm_pi(e1.mean_anom - el_ref.mean_anom);
        return true;
    };
    if (!fd_sensitivity<6>(a1, a2, sh, K, base, opt, &jac, functional)) return false;
    Eigen::Matrix<double, 8, 1> var;
    var << a1.sigma.cwiseProduct(a1.sigma), a2.sigma.cwiseProduct(a2.sigma);
    *cov = jac * var.asDiagonal() * jac.transpose();
    return true;
}

std::vector<LinkageCandidate> link_core(const Attributable& a1, const Station& s1,
                                        const Attributable& a2, const Station& s2,
                                        const LinkOptions& opt, bool two_body_only,
                                        LinkDiagnostics* diag) {
    std::vector<LinkageCandidate> out;
    LinkDiagnostics local;
    LinkDiagnostics& dg = diag ? *diag : local;

    if (std::abs(a1.epoch.seconds_from(a2.epoch)) < 1.0) {
        dg.notes.push_back("epochs closer than 1 s");
        return out;
    }
    if (!two_body_only && std::abs(a1.epoch.days - a2.epoch.days) > 3.0 + 1e-9) {
        dg.notes.push_back("epoch gap beyond 3-day secular validity");
        return out;
    }

    Shared sh;
    sh.ic1 = integrals_coefficients(a1, geodetic_to_inertial(s1, a1.epoch));
    sh.ic2 = integrals_coefficients(a2, geodetic_to_inertial(s2, a2.epoch));
    sh.t1_days = a1.epoch.days;
    sh.t2_days = a2.epoch.days;

    // Node-rate seeds.
    std::vector<double> seeds{0.0};
    if (!two_body_only && !opt.force_k_zero) {
        for (const auto& a : {std::pair{&a1, &s1}, std::pair{&a2, &s2}})
            for (double k : circular_orbit_node_rates(*a.first, *a.second, opt)) seeds.push_back(k);
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end(),
                                [](double x, double y) { return std::abs(x - y) < 1e-10; }),
                    seeds.end());
    }
    dg.seeds = static_cast<int>(seeds.size());

    // Shared selection weight from the first elliptic solution encountered.
    Eigen::Matrix2d gamma_sel = Eigen::Matrix2d::Zero();
    bool have_gamma_sel = false;

    struct Branch {
        double K;
        Solution cur;
        int iterations = 0;
        bool converged = false;
    };
    std::vector<Branch> finished;

    for (double K0 : seeds) {
        const double dtbar0 = light_time_dtbar_seconds(sh, 0.0, 0.0, false);
        PairSystem sys0 = build_system(sh.ic1, sh.ic2, -K0 * dtbar0);
        if (sys0.degenerate) {
            dg.notes.push_back("degenerate geometry (parallel D vectors)");
            continue;
        }
        const auto raw0 = solve_system(sys0, opt);
        auto sols0 = elaborate(sh, raw0, K0, opt, have_gamma_sel ? &gamma_sel : nullptr);
        if (!have_gamma_sel && !sols0.empty()) {
            if (delta_covariance(a1, a2, sh, K0, sols0.front().ranges, opt, &gamma_sel) &&
                gamma_sel.determinant() > 0.0) {
                have_gamma_sel = true;
                sols0 = elaborate(sh, raw0, K0, opt, &gamma_sel);
            }
        }

        for (const auto& start : sols0) {
            ++dg.branches;
            Branch br;
            br.K = K0;
            br.cur = start;
            if (two_body_only || opt.force_k_zero) {
                br.converged = true;
                finished.push_back(br);
                continue;
            }
            bool alive = true;
            for (int it = 0; it < opt.max_iterations; ++it) {
                ++br.iterations;
                const double K_new = secular_rates(br.cur.el1).raan_dot;
                if (std::abs(K_new - br.K) < opt.k_tol) {
                    br.K = K_new;
                    br.converged = true;
                    break;
                }
                br.K = K_new;
                const double dtbar = light_time_dtbar_seconds(sh, br.cur.ranges.rho1,
                                                              br.cur.ranges.rho2, opt.light_time);
                PairSystem sys = build_system(sh.ic1, sh.ic2, -br.K * dtbar);
                if (sys.degenerate) {
                    alive = false;
                    break;
                }
                const auto sols = elaborate(sh, solve_system(sys, opt), br.K, opt,
                                            have_gamma_sel ? &gamma_sel : nullptr);
                if (sols.empty()) {
                    alive = false;
                    break;
                }
                br.cur = *std::min_element(sols.begin(), sols.end(),
                                           [](const Solution& x, const Solution& y) {
                                               return x.chi_sel < y.chi_sel;
                                           });
            }
            if (alive && br.converged) {
                ++dg.converged;
                finished.push_back(br);
            } else if (!br.converged) {
                dg.notes.push_back(strprintf("branch did not converge (seed K=%.3e)", K0));
            }
        }
    }

    // Deduplicate converged branches and evaluate the definitive chi.
    for (const auto& br : finished) {
        bool dup = false;
        for (const auto& c : out)
            if (std::abs(c.rho1 - br.cur.ranges.rho1) < 1e-3 * (1.0 + c.rho1) &&
                std::abs(c.rho2 - br.cur.ranges.rho2) < 1e-3 * (1.0 + c.rho2) &&
                std::abs(c.K - br.K) < 1e-9)
                dup = true;
        if (dup) continue;

        LinkageCandidate cand;
        cand.rho1 = br.cur.ranges.rho1;
        cand.rho_dot1 = br.cur.ranges.rd1;
        cand.rho2 = br.cur.ranges.rho2;
        cand.rho_dot2 = br.cur.ranges.rd2;
        cand.el1 = br.cur.el1;
        cand.el2 = br.cur.el2;
        cand.K = br.K;
        cand.delta = br.cur.delta;
        cand.iterations = br.iterations;

        Eigen::Matrix2d gamma;
        if (delta_covariance(a1, a2, sh, br.K, br.cur.ranges, opt, &gamma) &&
            gamma.determinant() > 0.0) {
            const Eigen::Vector2d w = gamma.ldlt().solve(br.cur.delta);
            cand.chi = std::sqrt(std::max(0.0, br.cur.delta.dot(w)));
        } else {
            cand.chi = std::numeric_limits<double>::infinity();
            cand.degenerate = true;
            dg.notes.push_back("singular compatibility covariance");
        }
        out.push_back(cand);
    }

    std::sort(out.begin(), out.end(),
              [](const LinkageCandidate& a, const LinkageCandidate& b) { return a.chi < b.chi; });

    if (!two_body_only) {
        std::vector<LinkageCandidate> accepted;
        for (auto& c : out) {
            if (c.chi > opt.chi_max) continue;
            const RawSolution rs{c.rho1, c.rho_dot1, c.rho2, c.rho_dot2};
            element_covariance(a1, a2, sh, c.K, rs, opt, c.el1, &c.cov_elements);
            accepted.push_back(c);
        }
        return accepted;
    }
    return out;
}

}  // namespace

namespace {

// Circular-orbit solutions of one attributable: elements of every circular
// orbit (|v|^2 = mu/r, r.v = 0) compatible with the measured angles/rates.
std::vector<KeplerianElements> circular_orbit_elements(const Attributable& a, const Station& sta,
                                                       const LinkOptions& opt) {
    const IntegralsCoefficients ic =
        integrals_coefficients(a, geodetic_to_inertial(sta, a.epoch));
    const Vec3& q = ic.station_state.r;
    const Vec3& qd = ic.station_state.v;

    auto circ_gap = [&](double rho, double* rd_out) {
        const Vec3 r = q + rho * ic.rho_hat;
        const Vec3 vpart = qd + rho * ic.drho_hat_dt;
        const double denom = r.dot(ic.rho_hat);
        if (std::abs(denom) < 1e-9) return std::numeric_limits<double>::quiet_NaN();
        const double rd = -r.dot(vpart) / denom;
        if (rd_out) *rd_out = rd;
        const Vec3 v = vpart + rd * ic.rho_hat;
        return v.squaredNorm() - kEarth.mu / r.norm();
    };

    std::vector<KeplerianElements> out;
    const int n = 200;
    const double lmin = std::log(opt.rho_min), lmax = std::log(opt.rho_max);
    double prev_rho = 0, prev_gap = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < n; ++i) {
        const double rho = std::exp(lmin + (lmax - lmin) * i / (n - 1));
        const double gap = circ_gap(rho, nullptr);
        if (std::isfinite(gap) && std::isfinite(prev_gap) && prev_gap * gap <= 0.0) {
            double lo = prev_rho, hi = rho, glo = prev_gap;
            for (int k = 0; k < 60; ++k) {
                const double mid = 0.5 * (lo + hi);
                const double gm = circ_gap(mid, nullptr);
                if (!std::isfinite(gm)) break;
                if (glo * gm <= 0.0) hi = mid;
                else {
                    lo = mid;
                    glo = gm;
                }
            }
            double rd = 0.0;
            const double rho_root = 0.5 * (lo + hi);
            circ_gap(rho_root, &rd);
            try {
                out.push_back(state_to_elements(state_from_ranges(ic, rho_root, rd)));
            } catch (const ConversionError&) {
            }
        }
        prev_rho = rho;
        prev_gap = gap;
    }
    return out;
}

}  // namespace

std::vector<double> circular_orbit_node_rates(const Attributable& a, const Station& sta,
                                              const LinkOptions& opt) {
    std::vector<double> rates;
    for (const auto& el : circular_orbit_elements(a, sta, opt))
        rates.push_back(secular_rates(el).raan_dot);
    return rates;
}

std::vector<double> circular_geocentric_radii(const Attributable& a, const Station& sta,
                                              const LinkOptions& opt) {
    std::vector<double> radii;
    for (const auto& el : circular_orbit_elements(a, sta, opt)) radii.push_back(el.a);
    return radii;
}

std::vector<LinkageCandidate> solve_two_body_link(const Attributable& a1, const Station& s1,
                                                  const Attributable& a2, const Station& s2,
                                                  const LinkOptions& opt, LinkDiagnostics* diag) {
    return link_core(a1, s1, a2, s2, opt, true, diag);
}

std::vector<LinkageCandidate> link_j2(const Attributable& a1, const Station& s1,
                                      const Attributable& a2, const Station& s2,
                                      const LinkOptions& opt, LinkDiagnostics* diag) {
    return link_core(a1, s1, a2, s2, opt, false, diag);
}

double chi_value(const LinkageCandidate& cand, const Attributable& a1, const Station& s1,
                 const Attributable& a2, const Station& s2, double K, const LinkOptions& opt) {
    Shared sh;
    sh.ic1 = integrals_coefficients(a1, geodetic_to_inertial(s1, a1.epoch));
    sh.ic2 = integrals_coefficients(a2, geodetic_to_inertial(s2, a2.epoch));
    sh.t1_days = a1.epoch.days;
    sh.t2_days = a2.epoch.days;
    const RawSolution rs{cand.rho1, cand.rho_dot1, cand.rho2, cand.rho_dot2};
    const double dtbar = light_time_dtbar_seconds(sh, rs.rho1, rs.rho2, opt.light_time);
    const Eigen::Vector2d delta = compatibility_delta(cand.el1, cand.el2, K, dtbar);
    Eigen::Matrix2d gamma;
    if (!delta_covariance(a1, a2, sh, K, rs, opt, &gamma) || gamma.determinant() <= 0.0)
        throw std::runtime_error("chi_value: singular residual covariance (degenerate geometry)");
    const Eigen::Vector2d w = gamma.ldlt().solve(delta);
    return std::sqrt(std::max(0.0, delta.dot(w)));
}

}  // namespace debrisim
