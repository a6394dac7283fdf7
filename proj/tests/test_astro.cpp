#include <doctest.h>

#include <cmath>

#include "debrisim/astro/elements.hpp"
#include "debrisim/astro/station.hpp"
#include "debrisim/astro/sun.hpp"
#include "debrisim/util/rng.hpp"

using namespace debrisim;

namespace {

// Independent bisection oracle for Kepler's equation.
double kepler_bisection(double M, double e) {
    double lo = M - e - 1e-3, hi = M + e + 1e-3;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid - e * std::sin(mid) - M > 0.0) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("kepler solver: fixed cases") {
    CHECK(solve_kepler(0.0, 0.9) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(solve_kepler(kPi, 0.5) == doctest::Approx(kPi).epsilon(1e-13));
    // Oracle value frozen from the bisection: E - 0.1 sin E = 1.
    CHECK(kepler_bisection(1.0, 0.1) == doctest::Approx(1.0885977).epsilon(1e-7));
    CHECK(solve_kepler(1.0, 0.1) == doctest::Approx(1.0885977).epsilon(1e-7));
}

TEST_CASE("kepler solver: residual property over an e-grid up to 0.95") {
    RandomStream rng(42);
    for (double e = 0.0; e <= 0.951; e += 0.05) {
        for (int i = 0; i < 200; ++i) {
            const double M = rng.uniform(-kTwoPi, kTwoPi);
            const double E = solve_kepler(M, e);
            CHECK(std::abs(E - e * std::sin(E) - wrap_pm_pi(M)) < 1e-12);
        }
    }
}

TEST_CASE("elements_to_state: circular equatorial case") {
    KeplerianElements el;
    el.a = 7778.0;
    el.e = 0.0;
    el.inc = 0.0;
    const CartesianState s = elements_to_state(el);
    CHECK(s.r.x() == doctest::Approx(7778.0).epsilon(1e-12));
    CHECK(std::abs(s.r.y()) < 1e-9);
    CHECK(std::abs(s.r.z()) < 1e-9);
    CHECK(s.v.norm() == doctest::Approx(std::sqrt(kEarth.mu / 7778.0)).epsilon(1e-12));
    CHECK(s.v.norm() == doctest::Approx(7.159).epsilon(2e-4));
    CHECK(std::abs(s.r.dot(s.v)) < 1e-9);  // tangential
}

TEST_CASE("GTO-like perigee radius") {
    KeplerianElements el;
    el.a = 24400.0;
    el.e = 0.7;
    CHECK(el.perigee_radius() == doctest::Approx(7320.0).epsilon(1e-12));
}

TEST_CASE("elements <-> state round trip over random elliptic orbits") {
    RandomStream rng(7);
    double max_rel = 0.0;
    for (int i = 0; i < 10000; ++i) {
        KeplerianElements el;
        el.a = rng.uniform(6800.0, 45000.0);
        el.e = rng.uniform(1e-6, 0.9);
        el.inc = rng.uniform(1e-3, kPi - 1e-3);
        el.raan = rng.uniform(0.0, kTwoPi);
        el.argp = rng.uniform(0.0, kTwoPi);
        el.mean_anom = rng.uniform(0.0, kTwoPi);
        const KeplerianElements back = state_to_elements(elements_to_state(el));
        max_rel = std::max(max_rel, std::abs(back.a - el.a) / el.a);
        max_rel = std::max(max_rel, std::abs(back.e - el.e));
        max_rel = std::max(max_rel, std::abs(wrap_pm_pi(back.inc - el.inc)));
        max_rel = std::max(max_rel, std::abs(wrap_pm_pi(back.raan - el.raan)));
        // argp/mean anomaly are individually ill-conditioned at small e;
        // their sum is the stable quantity there.
        if (el.e > 1e-3) {
            max_rel = std::max(max_rel, std::abs(wrap_pm_pi(back.argp - el.argp)));
            max_rel = std::max(max_rel, std::abs(wrap_pm_pi(back.mean_anom - el.mean_anom)));
        } else {
            max_rel = std::max(max_rel, std::abs(wrap_pm_pi(back.argp + back.mean_anom -
                                                            el.argp - el.mean_anom)));
        }
    }
    CHECK(max_rel < 1e-9);
}

TEST_CASE("state_to_elements rejects degenerate states") {
    CartesianState hyper;
    hyper.r = Vec3(7000.0, 0.0, 0.0);
    hyper.v = Vec3(0.0, 12.0, 0.0);  // above escape speed
    CHECK_THROWS_AS((void)state_to_elements(hyper), ConversionError);

    CartesianState rect;
    rect.r = Vec3(7000.0, 0.0, 0.0);
    rect.v = Vec3(1.0, 0.0, 0.0);  // radial fall
    CHECK_THROWS_AS((void)state_to_elements(rect), ConversionError);
}

TEST_CASE("Delaunay round trip and ordering invariant") {
    RandomStream rng(11);
    for (int i = 0; i < 2000; ++i) {
        KeplerianElements el;
        el.a = rng.uniform(6800.0, 30000.0);
        el.e = rng.uniform(1e-6, 0.9);
        el.inc = rng.uniform(1e-6, kPi - 1e-6);
        el.raan = rng.uniform(0.0, kTwoPi);
        el.argp = rng.uniform(0.0, kTwoPi);
        el.mean_anom = rng.uniform(0.0, kTwoPi);
        const DelaunayElements d = delaunay_from_keplerian(el);
        CHECK(d.L >= d.G);
        CHECK(d.G >= std::abs(d.Z));
        const KeplerianElements back = keplerian_from_delaunay(d, el.epoch);
        CHECK(back.a == doctest::Approx(el.a).epsilon(1e-12));
        CHECK(back.e == doctest::Approx(el.e).epsilon(1e-9));
        CHECK(back.inc == doctest::Approx(el.inc).epsilon(1e-9));
    }
}

TEST_CASE("station at the zero-rotation epoch sits on the x axis") {
    Station sta;
    sta.name = "EQ";
    sta.lat = 0.0;
    sta.lon = 0.0;
    sta.height_m = 0.0;
    const Epoch t = epoch_with_zero_rotation();
    CHECK(earth_rotation_angle(t) == doctest::Approx(0.0).epsilon(1e-9));
    const CartesianState s = geodetic_to_inertial(sta, t);
    CHECK(s.r.x() == doctest::Approx(kEarth.earth_radius).epsilon(1e-12));
    CHECK(std::abs(s.r.y()) < 1e-6);
    CHECK(std::abs(s.r.z()) < 1e-12);
    // omega_earth * R_earth
    CHECK(s.v.norm() == doctest::Approx(0.465).epsilon(1e-3));
    CHECK(s.v.norm() == doctest::Approx(kEarth.earth_rotation_rate * kEarth.earth_radius)
                            .epsilon(1e-12));
}

TEST_CASE("Teide z component is constant over epochs") {
    const Network net = default_network();
    const Station& teide = net[0];
    CHECK(teide.name == "TEIDE");
    const double radius = kEarth.earth_radius + teide.height_m / 1000.0;
    const double z_expect = radius * std::sin(teide.lat);
    for (double days : {0.0, 10.3, 200.7, 4000.1}) {
        const CartesianState s = geodetic_to_inertial(teide, Epoch{days});
        CHECK(s.r.z() == doctest::Approx(z_expect).epsilon(1e-12));
    }
}

TEST_CASE("station inertial speed equals omega * |r| cos(latitude)") {
    RandomStream rng(3);
    for (int i = 0; i < 200; ++i) {
        Station sta;
        sta.lat = rng.uniform(-kPi / 2, kPi / 2);
        sta.lon = rng.uniform(-kPi, kPi);
        sta.height_m = rng.uniform(0.0, 4000.0);
        const CartesianState s = geodetic_to_inertial(sta, Epoch{rng.uniform(0.0, 5000.0)});
        const double expected = kEarth.earth_rotation_rate * s.r.norm() * std::cos(sta.lat);
        CHECK(s.v.norm() == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("sun direction: equinox, solstice, anti-parallel epochs") {
    const Epoch equinox = epoch_from_civil(2010, 3, 20, 63000.0);
    const double decl_eq = std::asin(sun_direction(equinox).z()) * kDegPerRad;
    CHECK(std::abs(decl_eq) < 0.5);

    const Epoch solstice = epoch_from_civil(2010, 6, 21, 41280.0);
    const double decl_sol = std::asin(sun_direction(solstice).z()) * kDegPerRad;
    CHECK(decl_sol == doctest::Approx(23.44).epsilon(0.005));

    // Half a year from perihelion the geometry is symmetric; away from the
    // apsides the equation of center shifts the directions by up to ~3.8 deg.
    const Epoch perihelion = epoch_from_civil(2010, 1, 3, 0.0);
    const double dot = sun_direction(perihelion).dot(sun_direction(perihelion.plus_days(182.62)));
    CHECK(std::acos(std::clamp(dot, -1.0, 1.0)) * kDegPerRad > 178.0);
    RandomStream rng(5);
    for (int i = 0; i < 50; ++i) {
        const Epoch t{rng.uniform(0.0, 7000.0)};
        const double d = sun_direction(t).dot(sun_direction(t.plus_days(182.62)));
        CHECK(std::acos(std::clamp(d, -1.0, 1.0)) * kDegPerRad > 176.0);
    }
}

TEST_CASE("network file round trip and validation") {
    const Network net = default_network();
    CHECK(net.size() == 7);
    save_network(net, "network_test.txt");
    const Network back = load_network("network_test.txt");
    REQUIRE(back.size() == net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        CHECK(back[i].name == net[i].name);
        CHECK(back[i].lat == doctest::Approx(net[i].lat).epsilon(1e-8));
        CHECK(back[i].lon == doctest::Approx(net[i].lon).epsilon(1e-8));
        CHECK(back[i].telescopes == 3);
    }
}
