#include <doctest.h>

#include <cmath>

#include "debrisim/astro/sun.hpp"
#include "debrisim/obs/synthesize.hpp"
#include "debrisim/util/rng.hpp"

using namespace debrisim;

namespace {

Station equatorial_station() {
    Station s;
    s.name = "EQ";
    s.lat = 0.0;
    s.lon = 0.0;
    return s;
}

// Epoch (within `from` + 1 day) where the solar elevation at the station
// crosses the target, by scan + bisection.
Epoch epoch_with_solar_elevation(const Station& sta, double target_rad, Epoch from) {
    double prev = solar_elevation(sta, from);
    for (double s = 60.0; s <= 86400.0 * 1.5; s += 60.0) {
        const Epoch t = from.plus_seconds(s);
        const double cur = solar_elevation(sta, t);
        if ((prev - target_rad) * (cur - target_rad) <= 0.0) {
            Epoch lo = from.plus_seconds(s - 60.0), hi = t;
            for (int i = 0; i < 60; ++i) {
                const Epoch mid{0.5 * (lo.days + hi.days)};
                if ((solar_elevation(sta, lo) - target_rad) *
                        (solar_elevation(sta, mid) - target_rad) <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            return lo;
        }
        prev = cur;
    }
    FAIL("no crossing found");
    return from;
}

}  // namespace

TEST_CASE("topocentric view: zenith object") {
    const Epoch t = epoch_with_zero_rotation();
    const Station sta = equatorial_station();
    CartesianState obj;
    obj.r = Vec3(kEarth.earth_radius + 1400.0, 0.0, 0.0);
    obj.v = Vec3(0.0, 7.0, 0.0);
    obj.epoch = t;
    const TopocentricView v = topocentric_view(obj, sta, t);
    CHECK(v.elevation == doctest::Approx(kPi / 2).epsilon(1e-9));
    CHECK(v.range == doctest::Approx(1400.0).epsilon(1e-12));
}

TEST_CASE("topocentric view: 15 deg elevation range and ground track") {
    const Epoch t = epoch_with_zero_rotation();
    const Station sta = equatorial_station();
    // Central angle such that the elevation is 15 deg at 1400 km altitude.
    const double el = 15.0 * kRadPerDeg;
    const double r = kEarth.earth_radius + 1400.0;
    const double theta = kPi / 2 - el - std::asin(kEarth.earth_radius * std::cos(el) / r);
    CartesianState obj;
    obj.r = Vec3(r * std::cos(theta), r * std::sin(theta), 0.0);
    obj.epoch = t;
    const TopocentricView v = topocentric_view(obj, sta, t);
    CHECK(v.elevation * kDegPerRad == doctest::Approx(15.0).epsilon(1e-9));
    // Closed form: rho = -R sin(el) + sqrt(R^2 sin^2(el) + 2 R h + h^2).
    const double rs = kEarth.earth_radius * std::sin(el);
    const double rho_expect =
        -rs + std::sqrt(rs * rs + 2.0 * kEarth.earth_radius * 1400.0 + 1400.0 * 1400.0);
    CHECK(rho_expect == doctest::Approx(3097.0).epsilon(1e-3));
    CHECK(v.range == doctest::Approx(rho_expect).epsilon(1e-9));
    // Ground-track distance ~2500 km (within 1%).
    CHECK(kEarth.earth_radius * theta == doctest::Approx(2500.0).epsilon(0.01));
}

TEST_CASE("posvel round trip is the identity") {
    RandomStream rng(17);
    const Epoch t{123.456};
    for (int i = 0; i < 2000; ++i) {
        Station sta;
        sta.lat = rng.uniform(-1.2, 1.2);
        sta.lon = rng.uniform(-kPi, kPi);
        const CartesianState ss = geodetic_to_inertial(sta, t);
        CartesianState obj;
        obj.r = Vec3(rng.uniform(-9000, 9000), rng.uniform(-9000, 9000),
                     rng.uniform(-9000, 9000));
        if (obj.r.norm() < 6600.0) continue;
        obj.v = Vec3(rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8));
        obj.epoch = t;
        const TopocentricView v = topocentric_view(obj, ss);
        const CartesianState back =
            state_from_view(v.ra, v.dec, v.ra_dot, v.dec_dot, v.range, v.range_rate, ss);
        CHECK((back.r - obj.r).norm() / obj.r.norm() < 1e-9);
        CHECK((back.v - obj.v).norm() / obj.v.norm() < 1e-9);
        CHECK(v.proper_motion ==
              doctest::Approx(std::sqrt(v.dec_dot * v.dec_dot +
                                        v.ra_dot * v.ra_dot * std::cos(v.dec) * std::cos(v.dec)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("earth shadow cylinder") {
    const Vec3 sun(1.0, 0.0, 0.0);
    const double r = kEarth.earth_radius + 1400.0;
    CHECK(in_earth_shadow(-r * sun, sun));
    CHECK_FALSE(in_earth_shadow(r * sun, sun));
    const Vec3 offset = -5000.0 * sun + (kEarth.earth_radius + 1.0) * Vec3(0.0, 1.0, 0.0);
    CHECK_FALSE(in_earth_shadow(offset, sun));
    const Vec3 inside = -5000.0 * sun + (kEarth.earth_radius - 1.0) * Vec3(0.0, 1.0, 0.0);
    CHECK(in_earth_shadow(inside, sun));
}

TEST_CASE("station darkness thresholds") {
    const Station sta = equatorial_station();
    const Epoch start{3000.0};
    const Epoch noonish = epoch_with_solar_elevation(sta, 60.0 * kRadPerDeg, start);
    CHECK_FALSE(station_dark(sta, noonish));
    const Epoch deep = epoch_with_solar_elevation(sta, -30.0 * kRadPerDeg, start);
    CHECK(station_dark(sta, deep));
    const Epoch grazing = epoch_with_solar_elevation(sta, -11.0 * kRadPerDeg, start);
    CHECK_FALSE(station_dark(sta, grazing));
    CHECK(station_dark(sta, grazing, -10.0 * kRadPerDeg));  // configurable threshold
}

TEST_CASE("phase angle geometries") {
    const Vec3 sun(1.0, 0.0, 0.0);
    const Vec3 obj(-8000.0, 0.0, 0.0);
    CHECK(phase_angle(obj, Vec3(-1000.0, 0.0, 0.0), sun) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(phase_angle(obj, obj + Vec3(0.0, 3000.0, 0.0), sun) ==
          doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(phase_angle(Vec3(8000.0, 0.0, 0.0), Vec3(6378.0, 0.0, 0.0), sun) ==
          doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("absolute magnitude law") {
    const PhotometryModel ph;
    CHECK(absolute_magnitude(1.0, ph) == doctest::Approx(33.0).epsilon(1e-12));
    CHECK(absolute_magnitude(0.1, ph) == doctest::Approx(38.0).epsilon(1e-12));
    CHECK(absolute_magnitude(31.7, ph) == doctest::Approx(25.50).epsilon(2e-4));
    PhotometryModel bright = ph;
    bright.albedo = 0.2;
    CHECK(absolute_magnitude(1.0, bright) ==
          doctest::Approx(33.0 - 2.5 * std::log10(2.0)).epsilon(1e-12));
}

TEST_CASE("apparent magnitude law and monotonicity") {
    const PhotometryModel ph;
    CHECK(apparent_magnitude(7.5, kEarth.au_km, 0.0, ph) == doctest::Approx(7.5).epsilon(1e-12));
    CHECK(apparent_magnitude(38.0, 1400.0, 0.0, ph) == doctest::Approx(12.856).epsilon(1e-4));
    const double h0 = apparent_magnitude(38.0, 2000.0, 0.0, ph);
    const double h90 = apparent_magnitude(38.0, 2000.0, kPi / 2, ph);
    CHECK(h90 - h0 > 3.0);

    RandomStream rng(4);
    for (int i = 0; i < 500; ++i) {
        const double rho = rng.uniform(800.0, 20000.0);
        const double phi = rng.uniform(0.0, 0.6 * kPi);
        const double h = apparent_magnitude(20.0, rho, phi, ph);
        CHECK(apparent_magnitude(20.0, rho * 1.01, phi, ph) > h);
        CHECK(apparent_magnitude(20.0, rho, phi + 0.01, ph) > h);
    }
}

TEST_CASE("trail S/N budget: the 200-pixel example") {
    InstrumentModel inst;
    inst.zero_point = 100.0;  // S = 100 e- at h = 0
    inst.exposure_s = 1.0;
    inst.pixel_arcsec = 1.5;
    inst.read_noise = 2.0;  // N = 4
    inst.dark_current = 0.0;
    inst.sky_rate = 0.0;
    const SnrBudget b = snr_trail(0.0, 300.0, inst);
    CHECK(b.trail_pixels == 200);
    CHECK(b.signal == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(b.noise_variance == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(b.snr_pixel == doctest::Approx(0.2357).epsilon(2e-4));
    CHECK(b.snr_trail == doctest::Approx(3.3333).epsilon(1e-4));
    CHECK(b.snr_trail / b.snr_pixel == doctest::Approx(std::sqrt(200.0)).epsilon(1e-6));
}

TEST_CASE("T=1 trail equals star exactly; faint-limit sqrt(T) ratio") {
    InstrumentModel inst;
    const SnrBudget still = snr_trail(14.0, 0.0, inst);
    CHECK(still.trail_pixels == 1);
    CHECK(still.snr_trail == still.snr_star);

    // S = 1e-3 N T regime.
    const int T = 200;
    const double target_s = 1e-3 * inst.pixel_noise_variance() * T;
    const double h = -2.5 * std::log10(target_s / (inst.zero_point * inst.exposure_s));
    const SnrBudget faint = snr_trail(h, 300.0, inst);
    REQUIRE(faint.trail_pixels == T);
    CHECK(faint.snr_trail / faint.snr_pixel == doctest::Approx(std::sqrt(200.0)).epsilon(0.01));
}

TEST_CASE("tasking S/N gain at the faint end is at least 14") {
    InstrumentModel inst;
    const double h = 24.0;
    const SnrBudget survey = snr_trail(h, 300.0, inst);
    const SnrBudget tasking = snr_trail(h, 0.0, inst);
    CHECK(tasking.snr_trail / survey.snr_trail >= 14.0);
}

TEST_CASE("astrometric error: floor, end-finding, degraded flag") {
    InstrumentModel inst;
    SnrBudget b;
    b.snr_pixel = 100.0;
    b.end_variance = 1.0 / (b.snr_pixel * b.snr_pixel);
    AstrometricSigma s = astrometric_sigma(b, inst);
    CHECK(s.sigma_arcsec == doctest::Approx(0.4).epsilon(1e-12));
    CHECK_FALSE(s.degraded);

    b.snr_pixel = 1.0;
    b.end_variance = 1.0;
    s = astrometric_sigma(b, inst);
    CHECK(s.sigma_arcsec == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_FALSE(s.degraded);

    b.snr_pixel = 0.5;
    b.end_variance = 4.0;
    s = astrometric_sigma(b, inst);
    CHECK(s.sigma_arcsec == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.degraded);
}

TEST_CASE("synthesis: failure reasons and determinism") {
    const InstrumentModel inst;
    const PhotometryModel ph;
    const RandomStream root(99);
    const Network net = default_network();
    const Station& sta = net[0];

    // A dark epoch at the station.
    const Epoch dark = epoch_with_solar_elevation(sta, -30.0 * kRadPerDeg, Epoch{3000.0});
    const Vec3 sun = sun_direction(dark);
    const CartesianState ss = geodetic_to_inertial(sta, dark);

    // Object straight above the station but pushed into the shadow when
    // possible; build the shadow case explicitly instead.
    CartesianState shadowed;
    shadowed.r = -(kEarth.earth_radius + 1400.0) * sun;
    shadowed.v = Vec3(0.0, 0.0, 7.0);
    shadowed.epoch = dark;
    // Only meaningful if it is also above the horizon; elevation is checked
    // first, so place the test station below it: use the antisolar zenith.
    Station anti = sta;
    (void)ss;
    const DetectionOutcome out_shadow = synthesize_from_state(
        shadowed, 0.2, 1, anti, 0, dark, ObsMode::Survey, root, inst, ph);
    CHECK_FALSE(out_shadow.detected);
    const bool shadow_or_elev = out_shadow.reason == DetectionFailure::Shadow ||
                                out_shadow.reason == DetectionFailure::Elevation;
    CHECK(shadow_or_elev);

    // Deterministic repetition.
    CartesianState zenith;
    zenith.r = ss.r.normalized() * (kEarth.earth_radius + 1400.0);
    zenith.v = Vec3(0.0, 7.1, 0.0);
    zenith.epoch = dark;
    const DetectionOutcome a = synthesize_from_state(zenith, 0.15, 7, sta, 0, dark,
                                                     ObsMode::Survey, root, inst, ph);
    const DetectionOutcome b = synthesize_from_state(zenith, 0.15, 7, sta, 0, dark,
                                                     ObsMode::Survey, root, inst, ph);
    CHECK(a.detected == b.detected);
    if (a.detected) {
        CHECK(a.attributable->ra == b.attributable->ra);
        CHECK(a.attributable->dec_dot == b.attributable->dec_dot);
    }
}

TEST_CASE("synthesis: S/N threshold boundary") {
    InstrumentModel inst;
    const PhotometryModel ph;
    const RandomStream root(5);
    const Network net = default_network();
    const Station& sta = net[1];
    const Epoch dark = epoch_with_solar_elevation(sta, -40.0 * kRadPerDeg, Epoch{3100.0});
    const CartesianState ss = geodetic_to_inertial(sta, dark);

    CartesianState zenith;
    zenith.r = ss.r.normalized() * (kEarth.earth_radius + 1400.0);
    zenith.v = Vec3(3.0, 3.0, 5.0);
    zenith.epoch = dark;
    if (in_earth_shadow(zenith.r, sun_direction(dark))) return;  // geometry luckless

    // Shrink the diameter until the trail S/N drops just below threshold.
    double d = 0.30;
    DetectionOutcome out;
    for (; d > 0.005; d *= 0.95) {
        out = synthesize_from_state(zenith, d, 3, sta, 1, dark, ObsMode::Survey, root, inst, ph);
        if (!out.detected) break;
    }
    if (!out.detected) {
        CHECK(out.reason == DetectionFailure::SnrTooLow);
        CHECK(out.snr.snr_trail < inst.snr_threshold);
    }
}

TEST_CASE("synthesis noise matches the declared sigma (statistical oracle)") {
    const InstrumentModel inst;
    const PhotometryModel ph;
    const Network net = default_network();
    const Station& sta = net[1];  // low latitude: deep nights year round
    const Epoch dark = epoch_with_solar_elevation(sta, -35.0 * kRadPerDeg, Epoch{3200.0});
    const CartesianState ss = geodetic_to_inertial(sta, dark);

    CartesianState obj;
    obj.r = ss.r.normalized() * (kEarth.earth_radius + 1500.0);
    obj.v = Vec3(1.0, 6.8, 2.0);
    obj.epoch = dark;
    if (in_earth_shadow(obj.r, sun_direction(dark))) return;

    const TopocentricView truth_view = apparent_view(obj, ss);
    double sum_sq = 0.0;
    int n = 0;
    double sigma = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const RandomStream root(1000 + i);
        const DetectionOutcome out = synthesize_from_state(obj, 0.5, 11, sta, 1, dark,
                                                           ObsMode::Survey, root, inst, ph);
        if (!out.detected) continue;
        const double res = wrap_pm_pi(out.attributable->ra - truth_view.ra);
        sum_sq += res * res;
        sigma = out.attributable->sigma[0];
        ++n;
    }
    REQUIRE(n > 5000);
    const double rms = std::sqrt(sum_sq / n);
    CHECK(rms == doctest::Approx(sigma).epsilon(0.05));
}
