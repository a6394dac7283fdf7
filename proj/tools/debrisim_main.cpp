#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "debrisim/campaign.hpp"
#include "debrisim/util/tabio.hpp"

namespace {

using namespace debrisim;

int log_level() {
    const char* env = std::getenv("DEBRISIM_LOG");
    if (!env) return 1;
    const std::string v = env;
    if (v == "quiet" || v == "0") return 0;
    if (v == "debug" || v == "2") return 2;
    return 1;
}

struct CommonArgs {
    std::string config, out = ".", population, network;
    double days = -1.0;
    std::uint64_t seed = 1;
    bool seed_set = false, days_set = false;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
    cmd->add_option("--config", args->config, "scenario config file (key = value sections)");
    cmd->add_option("--out", args->out, "output directory");
    cmd->add_option("--population", args->population, "population file");
    cmd->add_option("--network", args->network, "station network file");
    cmd->add_option("--days", args->days, "window length in days")
        ->each([args](const std::string&) { args->days_set = true; });
    cmd->add_option("--seed", args->seed, "random seed")
        ->each([args](const std::string&) { args->seed_set = true; });
}

Scenario make_scenario(const CommonArgs& args, const std::string& mode) {
    Scenario sc;
    sc.mode = mode;
    if (!args.config.empty()) {
        sc.config_file = args.config;
        apply_config(&sc, Config::load(args.config));
    }
    if (!args.population.empty()) sc.population_file = args.population;
    if (!args.network.empty()) sc.network_file = args.network;
    if (args.days_set) sc.days = args.days;
    if (args.seed_set) sc.seed = args.seed;
    sc.out_dir = args.out;
    return sc;
}

// Output files must round-trip through their own parsers.
void validate_outputs(const Scenario& sc) {
    namespace fs = std::filesystem;
    auto path = [&](const char* name) { return (fs::path(sc.out_dir) / name).string(); };
    const Network net = sc.network_file.empty() ? default_network() : load_network(sc.network_file);
    std::vector<std::string> names;
    for (const auto& s : net) names.push_back(s.name);

    (void)parse_attributables(path("attributables.txt"), names);
    (void)parse_sidecar(path("sidecar.txt"));
    (void)parse_catalog(path("catalog.txt"));
    if (sc.mode == "build-up") {
        for (const auto& row : read_table(path("efficiency.txt")))
            if (row.fields.size() != 7) throw IoError("efficiency.txt: malformed row");
    }
    if (sc.mode == "fragmentation") {
        for (const auto& row : read_table(path("timeline.txt")))
            if (row.fields.size() != 6) throw IoError("timeline.txt: malformed row");
        for (const auto& row : read_table(path("gabbard.txt")))
            if (row.fields.size() != 4) throw IoError("gabbard.txt: malformed row");
    }
    if (sc.mode == "tasking") {
        for (const auto& row : read_table(path("envelope.txt")))
            if (row.fields.size() != 7) throw IoError("envelope.txt: malformed row");
    }
}

int run_campaign(const CommonArgs& args, const std::string& mode) {
    const Scenario sc = make_scenario(args, mode);
    const std::string summary = run_scenario(sc);
    validate_outputs(sc);
    std::cout << summary;
    return 0;
}

int cmd_link(const CommonArgs& args, const std::string& obs_file, int rec1, int rec2) {
    const Scenario sc = make_scenario(args, "link");
    const Network net = sc.network_file.empty() ? default_network() : load_network(sc.network_file);
    std::vector<std::string> names;
    for (const auto& s : net) names.push_back(s.name);
    const auto obs = parse_attributables(obs_file, names);
    if (rec1 < 0 || rec2 < 0) {
        rec1 = 0;
        rec2 = 1;
    }
    if (static_cast<std::size_t>(std::max(rec1, rec2)) >= obs.size())
        throw IoError("link: need at least two attributable records");
    const auto& a1 = obs[static_cast<std::size_t>(rec1)];
    const auto& a2 = obs[static_cast<std::size_t>(rec2)];
    LinkDiagnostics diag;
    const auto candidates =
        link_j2(a1, net[a1.station], a2, net[a2.station], sc.pipeline.link, &diag);
    if (candidates.empty()) {
        std::cout << "no accepted candidates (" << diag.branches << " branches, "
                  << diag.converged << " converged)\n";
        return 0;
    }
    for (const auto& c : candidates) {
        std::cout << strprintf(
            "candidate chi=%.4f K=%.6e rad/s rho=(%.3f, %.3f) km\n"
            "  elements: a=%.3f km e=%.6f i=%.4f deg raan=%.4f deg argp=%.4f deg M=%.4f deg\n",
            c.chi, c.K, c.rho1, c.rho2, c.el1.a, c.el1.e, c.el1.inc * kDegPerRad,
            c.el1.raan * kDegPerRad, c.el1.argp * kDegPerRad, c.el1.mean_anom * kDegPerRad);
    }
    return 0;
}

int cmd_fit(const CommonArgs& args, const std::string& obs_file) {
    const Scenario sc = make_scenario(args, "fit");
    const Network net = sc.network_file.empty() ? default_network() : load_network(sc.network_file);
    std::vector<std::string> names;
    for (const auto& s : net) names.push_back(s.name);
    const auto obs = parse_attributables(obs_file, names);
    if (obs.size() < 2) {
        std::cerr << "fit: underdetermined: need at least 2 attributables (8 measurements)\n";
        return 1;
    }
    const auto& a1 = obs.front();
    const auto& a2 = obs.back();
    const auto candidates = link_j2(a1, net[a1.station], a2, net[a2.station], sc.pipeline.link);
    if (candidates.empty()) {
        std::cerr << "fit: linkage of the bounding records produced no preliminary orbit\n";
        return 2;
    }
    const FitResult fit = differential_correction(elements_to_state(candidates.front().el1), obs,
                                                  net, sc.pipeline.fit);
    if (!fit.converged) {
        std::cerr << "fit: " << fit.message << "\n";
        return 2;
    }
    const auto& e = fit.estimate;
    std::cout << strprintf(
        "fit: %zu trails rms=%.4f arcsec iterations=%d\n"
        "elements: a=%.6f km e=%.8f i=%.6f deg raan=%.6f deg argp=%.6f deg M=%.6f deg\n"
        "sigma: %.3e %.3e %.3e km | %.3e %.3e %.3e km/s\n",
        e.trails.size(), e.rms_arcsec, fit.iterations, e.elements.a, e.elements.e,
        e.elements.inc * kDegPerRad, e.elements.raan * kDegPerRad, e.elements.argp * kDegPerRad,
        e.elements.mean_anom * kDegPerRad, std::sqrt(e.cov(0, 0)), std::sqrt(e.cov(1, 1)),
        std::sqrt(e.cov(2, 2)), std::sqrt(e.cov(3, 3)), std::sqrt(e.cov(4, 4)),
        std::sqrt(e.cov(5, 5)));
    return 0;
}

int cmd_report(const CommonArgs& args, const std::string& catalog_file,
               const std::string& sidecar_file) {
    const Scenario sc = make_scenario(args, "report");
    const Population pop = load_population(sc.population_file);
    const auto catalog = parse_catalog(catalog_file);
    const auto ids = parse_sidecar(sidecar_file);
    std::vector<int> sidecar;
    for (const auto& id : ids) {
        int idx = -1;
        for (std::size_t i = 0; i < pop.size(); ++i)
            if (pop[i].id == id) idx = static_cast<int>(i);
        sidecar.push_back(idx);
    }
    std::cout << format_efficiency(efficiency_report(catalog, sidecar, pop));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-LEO optical surveillance simulator and catalog pipeline"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string obs_file, catalog_file, sidecar_file;
    int rec1 = -1, rec2 = -1;

    auto* buildup = app.add_subcommand("build-up", "survey campaign and catalog build-up");
    add_common(buildup, &args);
    auto* tasking = app.add_subcommand("tasking", "build-up followed by tasking and accuracy evaluation");
    add_common(tasking, &args);
    auto* frag = app.add_subcommand("fragmentation", "breakup cloud detection campaign");
    add_common(frag, &args);

    auto* link = app.add_subcommand("link", "link two attributable records into preliminary orbits");
    add_common(link, &args);
    link->add_option("--obs", obs_file, "attributable stream file")->required();
    link->add_option("--first", rec1, "first record index (default 0)");
    link->add_option("--second", rec2, "second record index (default 1)");

    auto* fit = app.add_subcommand("fit", "differential correction over an attributable file");
    add_common(fit, &args);
    fit->add_option("--obs", obs_file, "attributable stream file")->required();

    auto* report = app.add_subcommand("report", "efficiency report from catalog + truth sidecar");
    add_common(report, &args);
    report->add_option("--catalog", catalog_file, "catalog file")->required();
    report->add_option("--sidecar", sidecar_file, "truth sidecar file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (buildup->parsed()) return run_campaign(args, "build-up");
        if (tasking->parsed()) return run_campaign(args, "tasking");
        if (frag->parsed()) return run_campaign(args, "fragmentation");
        if (link->parsed()) return cmd_link(args, obs_file, rec1, rec2);
        if (fit->parsed()) return cmd_fit(args, obs_file);
        if (report->parsed()) return cmd_report(args, catalog_file, sidecar_file);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (log_level() > 1) std::cerr << "no subcommand executed\n";
    return 1;
}
