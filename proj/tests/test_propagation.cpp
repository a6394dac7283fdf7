#include <doctest.h>

#include <cmath>
#include <vector>

#include "debrisim/prop/numerical.hpp"
#include "debrisim/prop/secular.hpp"
#include "debrisim/util/rng.hpp"

using namespace debrisim;

namespace {

KeplerianElements reference_orbit(double e = 0.0, double inc_deg = 60.0) {
    KeplerianElements el;
    el.a = 7778.0;
    el.e = e;
    el.inc = inc_deg * kRadPerDeg;
    el.raan = 1.0;
    el.argp = 2.0;
    el.mean_anom = 0.5;
    return el;
}

// Least-squares slope of y(t).
double fitted_slope(const std::vector<double>& t, const std::vector<double>& y) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    const double n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    return (n * sty - st * sy) / (n * stt - st * st);
}

std::vector<double> unwrap(const std::vector<double>& a) {
    std::vector<double> out = a;
    for (std::size_t i = 1; i < out.size(); ++i)
        out[i] = out[i - 1] + wrap_pm_pi(a[i] - out[i - 1]);
    return out;
}

}  // namespace

TEST_CASE("secular rates: node drift anchor at a=7778 km, I=60 deg") {
    const SecularRates r = secular_rates(reference_orbit());
    const double node_deg_day = r.raan_dot * kSecPerDay * kDegPerRad;
    CHECK(node_deg_day == doctest::Approx(-2.49).epsilon(0.002));
    // ~5 deg * cos I per day at this altitude
    CHECK(node_deg_day == doctest::Approx(-5.0 * 0.5).epsilon(0.005));
}

TEST_CASE("secular rates: polar and critical-inclination zeros") {
    const SecularRates polar = secular_rates(reference_orbit(0.0, 90.0));
    CHECK(std::abs(polar.raan_dot) < 1e-20);
    CHECK_FALSE(polar.coeffs_valid);

    const double crit = std::asin(std::sqrt(0.8)) * kDegPerRad;  // 63.435 deg
    const SecularRates critical = secular_rates(reference_orbit(0.0, crit));
    CHECK(std::abs(critical.argp_dot) < 1e-18);
}

TEST_CASE("secular coefficient identities") {
    RandomStream rng(2);
    for (int i = 0; i < 200; ++i) {
        KeplerianElements el = reference_orbit(rng.uniform(0.0, 0.3), rng.uniform(5.0, 85.0));
        const SecularRates r = secular_rates(el);
        REQUIRE(r.coeffs_valid);
        CHECK(r.c_omega == doctest::Approx(r.argp_dot / r.raan_dot).epsilon(1e-12));
        CHECK(r.c_ell == doctest::Approx((r.l_dot - r.n) / r.raan_dot).epsilon(1e-12));
    }
}

TEST_CASE("propagate_secular: identity, anchors, composability") {
    const KeplerianElements el = reference_orbit();

    const KeplerianElements same = propagate_secular(el, 0.0);
    CHECK(same.raan == doctest::Approx(el.raan).epsilon(1e-15));
    CHECK(same.mean_anom == doctest::Approx(el.mean_anom).epsilon(1e-15));

    const KeplerianElements day = propagate_secular(el, kSecPerDay);
    CHECK(day.a == el.a);
    CHECK(day.e == el.e);
    CHECK(day.inc == el.inc);
    CHECK(wrap_pm_pi(day.raan - el.raan) * kDegPerRad == doctest::Approx(-2.49).epsilon(0.002));

    const KeplerianElements polar = propagate_secular(reference_orbit(0.0, 90.0), 123456.0);
    CHECK(polar.raan == doctest::Approx(reference_orbit().raan).epsilon(1e-12));

    RandomStream rng(9);
    for (int i = 0; i < 100; ++i) {
        const double dt1 = rng.uniform(-5e5, 5e5), dt2 = rng.uniform(-5e5, 5e5);
        const KeplerianElements ab = propagate_secular(propagate_secular(el, dt1), dt2);
        const KeplerianElements once = propagate_secular(el, dt1 + dt2);
        CHECK(wrap_pm_pi(ab.raan - once.raan) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(wrap_pm_pi(ab.argp - once.argp) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(wrap_pm_pi(ab.mean_anom - once.mean_anom) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("numerical: two-body closure over one period") {
    KeplerianElements el = reference_orbit();
    const CartesianState s0 = elements_to_state(el);
    const double period = kTwoPi / el.mean_motion();
    PropagationOptions opt;
    opt.include_j2 = false;
    const CartesianState s1 = propagate_numerical(s0, period, opt);
    CHECK((s1.r - s0.r).norm() < 1e-3);  // 1 m
}

TEST_CASE("numerical: forward-backward reversibility") {
    const CartesianState s0 = elements_to_state(reference_orbit(0.01, 55.0));
    const CartesianState fwd = propagate_numerical(s0, 3.0 * kSecPerDay);
    const CartesianState back = propagate_numerical(fwd, -3.0 * kSecPerDay);
    CHECK((back.r - s0.r).norm() < 1e-3);
    CHECK((back.v - s0.v).norm() < 1e-6);
}

TEST_CASE("numerical: reentry diagnostic") {
    CartesianState falling;
    falling.r = Vec3(6600.0, 0.0, 0.0);
    falling.v = Vec3(-2.0, 5.0, 0.0);  // perigee far below the surface
    CHECK_THROWS_AS((void)propagate_numerical(falling, 5000.0), PropagationError);
}

TEST_CASE("numerical vs secular: J2 drift consistency over 10 days") {
    const KeplerianElements el = reference_orbit(0.05, 60.0);
    const SecularRates rates = secular_rates(el);
    J2Propagator prop(elements_to_state(el));

    std::vector<double> t, raan, argp, ell;
    for (double s = 0.0; s <= 10.0 * kSecPerDay; s += 200.0) {
        const CartesianState state = prop.advance_to(el.epoch.plus_seconds(s));
        const KeplerianElements osc = state_to_elements(state);
        t.push_back(s);
        raan.push_back(osc.raan);
        argp.push_back(osc.argp);
        ell.push_back(osc.mean_anom);
    }
    CHECK(fitted_slope(t, unwrap(raan)) == doctest::Approx(rates.raan_dot).epsilon(0.01));
    CHECK(fitted_slope(t, unwrap(argp)) == doctest::Approx(rates.argp_dot).epsilon(0.01));
    CHECK(fitted_slope(t, unwrap(ell)) == doctest::Approx(rates.l_dot).epsilon(0.01));
}

TEST_CASE("numerical: J2 integrals conserved over 10 days") {
    const KeplerianElements el = reference_orbit(0.02, 65.0);
    const CartesianState s0 = elements_to_state(el);
    const double e0 = j2_energy(s0);
    const double z0 = s0.r.cross(s0.v).z();

    J2Propagator prop(s0);
    for (int day = 1; day <= 10; ++day) {
        const CartesianState s = prop.advance_to(el.epoch.plus_days(day));
        CHECK(std::abs(j2_energy(s) - e0) / std::abs(e0) < 1e-8);
        CHECK(std::abs(s.r.cross(s.v).z() - z0) / std::abs(z0) < 1e-8);
    }
}

TEST_CASE("state transition matrix matches a direct perturbation") {
    const CartesianState s0 = elements_to_state(reference_orbit(0.01, 60.0));
    const double dt = 0.5 * kSecPerDay;
    const Mat6 phi = state_transition(s0, dt);

    CartesianState pert = s0;
    pert.r.x() += 0.1;  // km
    const CartesianState a = propagate_numerical(pert, dt);
    const CartesianState b = propagate_numerical(s0, dt);
    const Eigen::Matrix<double, 6, 1> linear = phi.col(0) * 0.1;
    const Vec3 dr = a.r - b.r;
    CHECK((dr - linear.head<3>()).norm() / dr.norm() < 1e-3);
}
