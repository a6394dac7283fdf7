#include "debrisim/frag/breakup.hpp"

#include <cmath>
#include <stdexcept>

#include "debrisim/util/tabio.hpp"

namespace debrisim {

namespace {

double piecewise(const double (&p)[4], double lambda) {
    if (lambda <= p[0]) return p[2];
    if (lambda >= p[1]) return p[3];
    return p[2] + (p[3] - p[2]) * (lambda - p[0]) / (p[1] - p[0]);
}

void load4(const Config& cfg, const char* key, double (&p)[4]) {
    for (int i = 0; i < 4; ++i) {
        const std::string k = std::string(key) + std::to_string(i);
        p[i] = cfg.get_double("breakup", k, p[i]);
    }
}

}  // namespace

BreakupConfig breakup_from_config(const Config& cfg) {
    BreakupConfig b;
    b.explosion_coeff = cfg.get_double("breakup", "explosion_coeff", b.explosion_coeff);
    b.explosion_exp = cfg.get_double("breakup", "explosion_exp", b.explosion_exp);
    b.collision_coeff = cfg.get_double("breakup", "collision_coeff", b.collision_coeff);
    b.collision_mass_exp = cfg.get_double("breakup", "collision_mass_exp", b.collision_mass_exp);
    b.collision_exp = cfg.get_double("breakup", "collision_exp", b.collision_exp);
    b.catastrophic_threshold =
        cfg.get_double("breakup", "catastrophic_threshold", b.catastrophic_threshold);
    load4(cfg, "am_alpha", b.am_alpha);
    load4(cfg, "am_mu1", b.am_mu1);
    load4(cfg, "am_sigma1", b.am_sigma1);
    load4(cfg, "am_mu2", b.am_mu2);
    load4(cfg, "am_sigma2", b.am_sigma2);
    b.dv_explosion_slope = cfg.get_double("breakup", "dv_explosion_slope", b.dv_explosion_slope);
    b.dv_explosion_offset = cfg.get_double("breakup", "dv_explosion_offset", b.dv_explosion_offset);
    b.dv_collision_slope = cfg.get_double("breakup", "dv_collision_slope", b.dv_collision_slope);
    b.dv_collision_offset = cfg.get_double("breakup", "dv_collision_offset", b.dv_collision_offset);
    b.dv_sigma = cfg.get_double("breakup", "dv_sigma", b.dv_sigma);
    b.area_coeff = cfg.get_double("breakup", "area_coeff", b.area_coeff);
    b.area_exp = cfg.get_double("breakup", "area_exp", b.area_exp);
    return b;
}

bool is_catastrophic(double projectile_mass_kg, double impact_speed_kms, double target_mass_kg,
                     const BreakupConfig& cfg) {
    const double v_ms = impact_speed_kms * 1000.0;
    const double energy_per_mass = 0.5 * projectile_mass_kg * v_ms * v_ms / target_mass_kg;
    return energy_per_mass >= cfg.catastrophic_threshold;
}

namespace {

// Cumulative-law coefficient and exponent for the event.
void power_law(const FragmentationEvent& ev, const BreakupConfig& cfg, double* coeff,
               double* exponent) {
    if (ev.kind == BreakupKind::Explosion) {
        *coeff = cfg.explosion_coeff;
        *exponent = cfg.explosion_exp;
    } else {
        const double M = ev.target_mass_kg + ev.projectile_mass_kg;
        *coeff = cfg.collision_coeff * std::pow(M, cfg.collision_mass_exp);
        *exponent = cfg.collision_exp;
    }
}

}  // namespace

double expected_fragment_count(const FragmentationEvent& event, const BreakupConfig& cfg) {
    double coeff, exponent;
    power_law(event, cfg, &coeff, &exponent);
    return coeff * std::pow(event.size_cutoff_m, exponent);
}

std::vector<Fragment> generate_fragments(const FragmentationEvent& event,
                                         const BreakupConfig& cfg) {
    if (event.kind == BreakupKind::Collision &&
        !is_catastrophic(event.projectile_mass_kg, event.impact_speed_kms, event.target_mass_kg,
                         cfg))
        throw std::invalid_argument(
            "generate_fragments: non-catastrophic collision (cratering regime, not modeled)");

    double coeff, exponent;
    power_law(event, cfg, &coeff, &exponent);

    // Truncate the law where it predicts less than one fragment.
    const double l_max =
        std::max(2.0 * event.size_cutoff_m, std::pow(1.0 / coeff, 1.0 / exponent));
    const double n_lo = coeff * std::pow(event.size_cutoff_m, exponent);
    const double n_hi = coeff * std::pow(l_max, exponent);
    const double expected = std::max(0.0, n_lo - n_hi);

    RandomStream rng = RandomStream(event.seed).fork("breakup");

    // Poisson draw around the cumulative-law expectation.
    int count = 0;
    if (expected < 5000.0) {
        const double limit = std::exp(-expected);
        double p = 1.0;
        while (true) {
            p *= rng.uniform();
            if (p <= limit) break;
            ++count;
        }
    } else {
        count = static_cast<int>(std::lround(expected + std::sqrt(expected) * rng.normal()));
    }

    std::vector<Fragment> out;
    out.reserve(static_cast<std::size_t>(count));
    const double cut_pow = std::pow(event.size_cutoff_m, exponent);
    const double max_pow = std::pow(l_max, exponent);
    for (int i = 0; i < count; ++i) {
        Fragment f;
        // Inverse CDF of the truncated power law.
        const double u = rng.uniform();
        f.size_m = std::pow(cut_pow + u * (max_pow - cut_pow), 1.0 / exponent);

        const double lambda = std::log10(f.size_m);
        const double alpha = piecewise(cfg.am_alpha, lambda);
        const bool first = rng.uniform() < alpha;
        const double mu = first ? piecewise(cfg.am_mu1, lambda) : piecewise(cfg.am_mu2, lambda);
        const double sg =
            first ? piecewise(cfg.am_sigma1, lambda) : piecewise(cfg.am_sigma2, lambda);
        const double chi = mu + sg * rng.normal();
        f.area_to_mass = std::pow(10.0, chi);
        f.area_m2 = cfg.area_coeff * std::pow(f.size_m, cfg.area_exp);
        f.mass_kg = f.area_m2 / f.area_to_mass;

        const double slope =
            event.kind == BreakupKind::Explosion ? cfg.dv_explosion_slope : cfg.dv_collision_slope;
        const double offset = event.kind == BreakupKind::Explosion ? cfg.dv_explosion_offset
                                                                   : cfg.dv_collision_offset;
        const double dv_mag = std::pow(10.0, slope * chi + offset + cfg.dv_sigma * rng.normal());

        // Isotropic direction.
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, kTwoPi);
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        f.dv_ms = dv_mag * Vec3(s * std::cos(phi), s * std::sin(phi), z);
        out.push_back(f);
    }
    return out;
}

std::vector<Fragment> core_filter(const std::vector<Fragment>& fragments,
                                  const FragmentationEvent& event) {
    std::vector<Fragment> core;
    for (const auto& f : fragments)
        if (f.dv_ms.norm() < event.dv_cutoff_ms) core.push_back(f);
    return core;
}

std::vector<FragmentOrbit> fragment_states(const CartesianState& parent,
                                           const std::vector<Fragment>& fragments) {
    if (parent.r.norm() <= kEarth.earth_radius)
        throw std::invalid_argument("fragment_states: parent below the Earth surface");
    std::vector<FragmentOrbit> out;
    out.reserve(fragments.size());
    for (const auto& f : fragments) {
        CartesianState s = parent;
        s.v += f.dv_ms / 1000.0;
        FragmentOrbit fo;
        fo.elements = state_to_elements(s);
        fo.reentering = fo.elements.perigee_altitude() < 200.0;
        out.push_back(fo);
    }
    return out;
}

CartesianState default_parent(const Epoch& t) {
    KeplerianElements el;
    el.a = kEarth.earth_radius + 1400.0;
    el.e = 0.0;
    el.inc = 74.0 * kRadPerDeg;
    el.raan = 0.0;
    el.argp = 0.0;
    el.mean_anom = 0.0;
    el.epoch = t;
    return elements_to_state(el);
}

std::vector<GabbardRow> gabbard(const std::vector<FragmentOrbit>& orbits) {
    std::vector<GabbardRow> rows;
    rows.reserve(orbits.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        const KeplerianElements& el = orbits[i].elements;
        GabbardRow r;
        r.fragment = static_cast<int>(i);
        r.period_min = kTwoPi / el.mean_motion() / 60.0;
        r.apogee_km = el.apogee_radius() - kEarth.earth_radius;
        r.perigee_km = el.perigee_radius() - kEarth.earth_radius;
        rows.push_back(r);
    }
    return rows;
}

std::string format_gabbard(const std::vector<GabbardRow>& rows) {
    std::string out = "# fragment period_min apogee_km perigee_km\n";
    for (const auto& r : rows)
        out += strprintf("%d %.6f %.3f %.3f\n", r.fragment, r.period_min, r.apogee_km,
                         r.perigee_km);
    return out;
}

}  // namespace debrisim
