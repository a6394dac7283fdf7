#pragma once

#include <optional>
#include <string>
#include <vector>

#include "debrisim/link/integrals.hpp"
#include "debrisim/prop/secular.hpp"

namespace debrisim {

struct LinkOptions {
    double chi_max = 5.0;
    double rho_min = 10.0;       // km
    double rho_max = 20000.0;    // km
    int scan_nodes = 384;        // branch-scan resolution in rho2
    int max_iterations = 30;     // fixed-point iterations on K
    double k_tol = 1e-12;        // rad/s
    bool light_time = true;
    bool force_k_zero = false;   // keep K = 0: reduces link_j2 to the two-body solve
};

/// One solution of the linkage system: ranges and range rates at the two
/// epochs, the element sets at (t1bar, t2bar), the node rate K it was solved
/// with, and the compatibility chi.
struct LinkageCandidate {
    double rho1 = 0, rho_dot1 = 0, rho2 = 0, rho_dot2 = 0;
    KeplerianElements el1, el2;
    double K = 0.0;      // rad/s
    double chi = 0.0;
    Eigen::Vector2d delta = Eigen::Vector2d::Zero();  // (d_omega, d_ell) residuals
    Mat6 cov_elements = Mat6::Zero();  // (a,e,I,raan,argp,l) at t1bar
    int iterations = 0;
    bool degenerate = false;
};

struct LinkDiagnostics {
    int seeds = 0;
    int branches = 0;
    int converged = 0;
    std::vector<std::string> notes;
};

/// Pure two-body linkage (node rate K = 0): all positive-range solutions of
/// the energy/angular-momentum system, with chi evaluated against the
/// plain compatibility conditions.
std::vector<LinkageCandidate> solve_two_body_link(const Attributable& a1, const Station& s1,
                                                  const Attributable& a2, const Station& s2,
                                                  const LinkOptions& opt = {},
                                                  LinkDiagnostics* diag = nullptr);

/// J2-aware linkage: fixed-point iteration on the node rate K, seeded from
/// K=0 and from the circular orbits of each attributable; every solution of
/// each seed system starts its own iteration branch. Only candidates with
/// chi <= opt.chi_max are returned.
std::vector<LinkageCandidate> link_j2(const Attributable& a1, const Station& s1,
                                      const Attributable& a2, const Station& s2,
                                      const LinkOptions& opt = {},
                                      LinkDiagnostics* diag = nullptr);

/// chi of the K-corrected compatibility conditions for given element sets,
/// with the residual covariance propagated from the attributable covariances
/// by central finite differences. Throws std::runtime_error when the
/// propagated covariance is singular (degenerate geometry).
double chi_value(const LinkageCandidate& cand, const Attributable& a1, const Station& s1,
                 const Attributable& a2, const Station& s2, double K,
                 const LinkOptions& opt = {});

/// Node rates of circular orbits compatible with one attributable (K seeds).
std::vector<double> circular_orbit_node_rates(const Attributable& a, const Station& sta,
                                              const LinkOptions& opt = {});

/// Geocentric radii of those circular orbits (pair-search prefilter input).
std::vector<double> circular_geocentric_radii(const Attributable& a, const Station& sta,
                                              const LinkOptions& opt = {});

}  // namespace debrisim
