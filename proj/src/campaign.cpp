#include "debrisim/campaign.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "debrisim/util/tabio.hpp"

namespace debrisim {

namespace {

std::vector<std::string> station_names(const Network& net) {
    std::vector<std::string> names;
    for (const auto& s : net) names.push_back(s.name);
    return names;
}

// Splits a time-sorted stream into daily batches from `start`.
std::vector<std::vector<Attributable>> daily_batches(const std::vector<Attributable>& stream,
                                                     const Epoch& start, int days) {
    std::vector<std::vector<Attributable>> batches(static_cast<std::size_t>(days));
    for (const auto& a : stream) {
        int day = static_cast<int>(std::floor(a.epoch.days - start.days));
        day = std::clamp(day, 0, days - 1);
        batches[static_cast<std::size_t>(day)].push_back(a);
    }
    return batches;
}

Network scenario_network(const Scenario& sc) {
    return sc.network_file.empty() ? default_network() : load_network(sc.network_file);
}

void run_pipeline_batches(CorrelationPipeline* pipeline,
                          const std::vector<std::vector<Attributable>>& batches) {
    for (const auto& b : batches) pipeline->process_batch(b);
}

}  // namespace

void apply_config(Scenario* sc, const Config& cfg) {
    sc->instrument = instrument_from_config(cfg);
    sc->photometry = photometry_from_config(cfg);
    sc->breakup = breakup_from_config(cfg);

    sc->start.days = cfg.get_double("scenario", "start_days", sc->start.days);
    sc->days = cfg.get_double("scenario", "days", sc->days);
    sc->seed = static_cast<std::uint64_t>(
        cfg.get_double("scenario", "seed", static_cast<double>(sc->seed)));
    sc->buildup_days = cfg.get_double("scenario", "buildup_days", sc->buildup_days);
    sc->prediction_days = cfg.get_double("scenario", "prediction_days", sc->prediction_days);
    sc->timeline_days = cfg.get_int("scenario", "timeline_days", sc->timeline_days);
    sc->population_file = cfg.get_string("scenario", "population", sc->population_file);
    sc->network_file = cfg.get_string("scenario", "network", sc->network_file);

    sc->survey.pass_step_s = cfg.get_double("survey", "pass_step_s", sc->survey.pass_step_s);
    sc->survey.limits.min_elevation =
        cfg.get_double("survey", "min_elevation_deg",
                       sc->survey.limits.min_elevation * kDegPerRad) * kRadPerDeg;
    sc->survey.limits.dark_sun_elevation =
        cfg.get_double("survey", "dark_sun_elevation_deg",
                       sc->survey.limits.dark_sun_elevation * kDegPerRad) * kRadPerDeg;

    PipelineOptions& p = sc->pipeline;
    p.link.chi_max = cfg.get_double("thresholds", "chi_max", p.link.chi_max);
    p.chi_attr_max = cfg.get_double("thresholds", "chi_attr_max", p.chi_attr_max);
    p.rms_gate_arcsec = cfg.get_double("thresholds", "rms_gate_arcsec", p.rms_gate_arcsec);
    p.reliable_trails = cfg.get_int("thresholds", "reliable_trails", p.reliable_trails);
    p.numbering_trails = cfg.get_int("thresholds", "numbering_trails", p.numbering_trails);
    p.link_window_days = cfg.get_double("thresholds", "link_window_days", p.link_window_days);
    p.link_min_gap_days = cfg.get_double("thresholds", "link_min_gap_days", p.link_min_gap_days);
    p.use_prefilter = cfg.get_bool("thresholds", "use_prefilter", p.use_prefilter);
    p.coarse_gate_deg = cfg.get_double("thresholds", "coarse_gate_deg", p.coarse_gate_deg);

    const std::string kind = cfg.get_string("fragmentation", "kind", "explosion");
    sc->event.kind = kind == "collision" ? BreakupKind::Collision : BreakupKind::Explosion;
    sc->event.target_mass_kg =
        cfg.get_double("fragmentation", "target_mass_kg", sc->event.target_mass_kg);
    sc->event.projectile_mass_kg =
        cfg.get_double("fragmentation", "projectile_mass_kg", sc->event.projectile_mass_kg);
    sc->event.impact_speed_kms =
        cfg.get_double("fragmentation", "impact_speed_kms", sc->event.impact_speed_kms);
    sc->event.size_cutoff_m =
        cfg.get_double("fragmentation", "size_cutoff_m", sc->event.size_cutoff_m);
    sc->event.dv_cutoff_ms =
        cfg.get_double("fragmentation", "dv_cutoff_ms", sc->event.dv_cutoff_ms);
}

BuildupResult run_buildup(const Scenario& sc) {
    BuildupResult out;
    out.network = scenario_network(sc);
    out.population = load_population(sc.population_file);
    const Epoch end = sc.start.plus_days(sc.days);
    out.survey = run_survey(out.population, out.network, sc.start, end, sc.seed, sc.instrument,
                            sc.photometry, sc.survey);

    CorrelationPipeline pipeline(out.network, sc.pipeline);
    run_pipeline_batches(&pipeline,
                         daily_batches(out.survey.attributables, sc.start,
                                       static_cast<int>(std::ceil(sc.days))));
    pipeline.finalize();
    out.catalog = pipeline.catalog();
    out.report = efficiency_report(out.catalog, out.survey.sidecar, out.population);
    return out;
}

TaskingResult run_tasking(const Scenario& sc) {
    TaskingResult out;
    Scenario buildup_sc = sc;
    buildup_sc.days = sc.buildup_days;
    out.buildup.network = scenario_network(sc);
    out.buildup.population = load_population(sc.population_file);
    const Network& net = out.buildup.network;
    const Population& pop = out.buildup.population;

    const Epoch buildup_end = sc.start.plus_days(sc.buildup_days);
    out.buildup.survey = run_survey(pop, net, sc.start, buildup_end, sc.seed, sc.instrument,
                                    sc.photometry, sc.survey);
    out.stream = out.buildup.survey.attributables;
    out.sidecar = out.buildup.survey.sidecar;

    CorrelationPipeline pipeline(net, sc.pipeline);
    run_pipeline_batches(&pipeline,
                         daily_batches(out.stream, sc.start,
                                       static_cast<int>(std::ceil(sc.buildup_days))));
    out.buildup.catalog = pipeline.catalog();
    out.buildup.report = efficiency_report(out.buildup.catalog, out.sidecar, pop);

    const RandomStream root(sc.seed);

    // Truth propagators advance monotonically through the tasking phase.
    std::map<int, J2Propagator> truth_props;
    auto truth_state = [&](int obj, const Epoch& t) -> CartesianState {
        auto it = truth_props.find(obj);
        if (it == truth_props.end())
            it = truth_props
                     .emplace(obj, J2Propagator(elements_to_state(
                                       pop[static_cast<std::size_t>(obj)].truth)))
                     .first;
        return it->second.advance_to(t);
    };

    // Feasibility cache keyed by the orbit's fit epoch (refreshed on refit).
    std::map<std::pair<int, double>, bool> feasibility_cache;
    FeasibilityOptions feas_opt;
    feas_opt.prop = sc.pipeline.fit.prop;
    feas_opt.angular_bound_max_rad = sc.instrument.fov_halfwidth_rad();

    double survey_phase_sum = 0.0;
    int survey_phase_n = 0;
    for (const auto& e : out.buildup.survey.exposures) {
        survey_phase_sum += e.phase;
        ++survey_phase_n;
    }
    double tasking_phase_sum = 0.0;
    int tasking_phase_n = 0;

    const int tasking_days = static_cast<int>(std::ceil(sc.days));
    for (int day = 0; day < tasking_days; ++day) {
        const Epoch day_start = buildup_end.plus_days(day);
        const Epoch day_end = day_start.plus_days(1.0);

        // Numbered, tasking-feasible targets.
        struct Target {
            int catalog_index;
            int truth_object;
        };
        std::vector<Target> targets;
        const auto& catalog = pipeline.catalog();
        for (std::size_t k = 0; k < catalog.size(); ++k) {
            const Correlation& corr = catalog[k];
            if (corr.orbit.status != OrbitStatus::Numbered) continue;
            const int obj = majority_object(corr, out.sidecar);
            if (obj < 0) continue;
            const auto key = std::make_pair(corr.orbit.trails.front(), corr.orbit.state.epoch.days);
            auto it = feasibility_cache.find(key);
            if (it == feasibility_cache.end()) {
                bool pass = false;
                try {
                    pass = tasking_feasibility(corr.orbit, feas_opt).pass;
                } catch (const PropagationError&) {
                }
                it = feasibility_cache.emplace(key, pass).first;
            }
            if (it->second) targets.push_back({static_cast<int>(k), obj});
        }

        // Predicted passes of each target for this night.
        std::vector<Pass> passes;
        std::vector<Target> pass_owner;
        for (const auto& tgt : targets) {
            const OrbitEstimate& orbit = catalog[static_cast<std::size_t>(tgt.catalog_index)].orbit;
            J2Propagator prop(orbit.state, sc.pipeline.fit.prop);
            auto traj = [&prop](const Epoch& t) { return prop.advance_to(t); };
            try {
                auto p = scan_passes(traj, net, day_start, day_end, sc.survey.pass_step_s,
                                     sc.survey.limits);
                for (auto& pass : p) {
                    pass.object = static_cast<int>(pass_owner.size());
                    pass_owner.push_back(tgt);
                    passes.push_back(std::move(pass));
                }
            } catch (const PropagationError&) {
            }
        }
        auto exposures = schedule_tasking(passes, net, sc.instrument, nullptr);

        // Synthesis against the truth, with the pointing error of the
        // prediction checked against the field half-width.
        std::sort(exposures.begin(), exposures.end(), [&](const Exposure& a, const Exposure& b) {
            if (pass_owner[a.object].truth_object != pass_owner[b.object].truth_object)
                return pass_owner[a.object].truth_object < pass_owner[b.object].truth_object;
            return a.epoch < b.epoch;
        });
        std::vector<Attributable> batch;
        std::vector<int> batch_objects;
        for (const auto& e : exposures) {
            const Target& tgt = pass_owner[e.object];
            const OrbitEstimate& orbit = catalog[static_cast<std::size_t>(tgt.catalog_index)].orbit;
            const CartesianState truth = truth_state(tgt.truth_object, e.epoch);
            const CartesianState sta = geodetic_to_inertial(net[e.station], e.epoch);

            double pointing_error = 0.0;
            try {
                J2Propagator prop(orbit.state, sc.pipeline.fit.prop);
                const TopocentricView pred = apparent_view(prop.advance_to(e.epoch), sta);
                const TopocentricView true_view = apparent_view(truth, sta);
                const Vec3 d1 = radec_unit(pred.ra, pred.dec);
                const Vec3 d2 = radec_unit(true_view.ra, true_view.dec);
                pointing_error = std::acos(std::clamp(d1.dot(d2), -1.0, 1.0));
            } catch (const PropagationError&) {
                continue;
            }

            const PopulationObject& obj = pop[static_cast<std::size_t>(tgt.truth_object)];
            PhotometryModel ph = sc.photometry;
            ph.albedo = obj.albedo;
            const auto det = synthesize_from_state(
                truth, obj.diameter_m, object_key_hash(obj.id), net[e.station], e.station,
                e.epoch, ObsMode::Tasking, root, sc.instrument, ph, sc.survey.limits,
                pointing_error);
            if (!det.detected) continue;
            Attributable a = *det.attributable;
            a.record = static_cast<int>(out.stream.size());
            out.stream.push_back(a);
            out.sidecar.push_back(tgt.truth_object);
            batch.push_back(a);
            batch_objects.push_back(tgt.truth_object);
            tasking_phase_sum += det.phase;
            ++tasking_phase_n;
        }
        std::sort(batch.begin(), batch.end(),
                  [](const Attributable& a, const Attributable& b) { return a.record < b.record; });
        pipeline.process_batch(batch);
    }
    pipeline.finalize();
    out.catalog = pipeline.catalog();

    out.mean_survey_phase_deg =
        survey_phase_n ? survey_phase_sum / survey_phase_n * kDegPerRad : 0.0;
    out.mean_tasking_phase_deg =
        tasking_phase_n ? tasking_phase_sum / tasking_phase_n * kDegPerRad : 0.0;

    // Accuracy evaluation: propagate each numbered orbit and its covariance
    // one prediction horizon past its last observation.
    for (const auto& corr : out.catalog) {
        if (corr.orbit.status != OrbitStatus::Numbered) continue;
        const int obj = majority_object(corr, out.sidecar);
        if (obj < 0) continue;

        double last_obs = corr.orbit.state.epoch.days;
        for (int t : corr.orbit.trails)
            last_obs = std::max(last_obs, out.stream[static_cast<std::size_t>(t)].epoch.days);
        const Epoch target{last_obs + sc.prediction_days};
        const double dt = target.seconds_from(corr.orbit.state.epoch);

        TaskingEvaluation ev;
        ev.object = obj;
        ev.cls = classify(pop[static_cast<std::size_t>(obj)].truth).cls;
        ev.trails = corr.orbit.trails.size();
        try {
            const Mat6 phi = state_transition(corr.orbit.state, dt, sc.pipeline.fit.prop);
            const Mat6 cov_end = phi * corr.orbit.cov * phi.transpose();
            const CartesianState pred =
                propagate_numerical(corr.orbit.state, dt, sc.pipeline.fit.prop);
            ev.norms = envelope_norm(cov_end, pred, envelope_for(ev.cls));
            const CartesianState truth = truth_state(obj, target);
            ev.velocity_error_rel = (pred.v - truth.v).norm() / truth.v.norm();
            ev.angular_error_rad =
                (pred.r - truth.r).norm() /
                state_to_elements(pred).perigee_altitude();
        } catch (const std::exception&) {
            continue;
        }
        out.evaluations.push_back(ev);
    }
    return out;
}

FragmentationResult run_fragmentation(const Scenario& sc) {
    FragmentationResult out;
    Scenario local = sc;
    local.event.parent = default_parent(sc.start);
    local.event.seed = sc.seed;
    out.timeline = detection_timeline(local.event, scenario_network(sc), sc.instrument,
                                      sc.photometry, sc.timeline_days, sc.seed, sc.pipeline,
                                      sc.breakup, sc.survey);

    // Gabbard diagram of the cataloged fragments (>= 4 trails, the
    // false-correlation guard in a cloud of near-identical orbits).
    std::vector<FragmentOrbit> cataloged;
    for (const auto& corr : out.timeline.catalog) {
        if (corr.orbit.trails.size() < 4) continue;
        FragmentOrbit fo;
        fo.elements = corr.orbit.elements;
        cataloged.push_back(fo);
    }
    out.gabbard_rows = gabbard(cataloged);
    return out;
}

std::string run_scenario(const Scenario& sc) {
    namespace fs = std::filesystem;
    fs::create_directories(sc.out_dir);
    auto path = [&](const char* name) { return (fs::path(sc.out_dir) / name).string(); };
    std::string summary;

    if (sc.mode == "build-up") {
        const BuildupResult res = run_buildup(sc);
        write_text_file(path("attributables.txt"),
                        format_attributables(res.survey.attributables,
                                             station_names(res.network)));
        write_text_file(path("sidecar.txt"), format_sidecar(res.survey.sidecar, res.population));
        write_text_file(path("catalog.txt"), format_catalog(res.catalog));
        write_text_file(path("efficiency.txt"), format_efficiency(res.report));
        summary = strprintf("build-up: %zu objects, %zu attributables, %zu correlations\n",
                            res.population.size(), res.survey.attributables.size(),
                            res.catalog.size());
        summary += format_efficiency(res.report);
    } else if (sc.mode == "tasking") {
        const TaskingResult res = run_tasking(sc);
        std::vector<std::string> pop_ids;
        write_text_file(path("attributables.txt"),
                        format_attributables(res.stream, station_names(res.buildup.network)));
        write_text_file(path("sidecar.txt"),
                        format_sidecar(res.sidecar, res.buildup.population));
        write_text_file(path("catalog.txt"), format_catalog(res.catalog));
        std::string env = "# object class trails pos_norm vel_norm vel_err_rel ang_err_arcsec\n";
        int pass = 0;
        for (const auto& ev : res.evaluations) {
            env += strprintf("%s %s %zu %.6f %.6f %.3e %.3f\n",
                             res.buildup.population[static_cast<std::size_t>(ev.object)].id.c_str(),
                             orbit_class_name(ev.cls), ev.trails, ev.norms.position,
                             ev.norms.velocity, ev.velocity_error_rel,
                             ev.angular_error_rad * kArcsecPerRad);
            if (ev.norms.inside()) ++pass;
        }
        write_text_file(path("envelope.txt"), env);
        summary = strprintf(
            "tasking: %zu numbered orbits evaluated, %d inside the accuracy envelope\n"
            "mean survey phase %.1f deg, mean tasking phase %.1f deg\n",
            res.evaluations.size(), pass, res.mean_survey_phase_deg, res.mean_tasking_phase_deg);
    } else if (sc.mode == "fragmentation") {
        const FragmentationResult res = run_fragmentation(sc);
        write_text_file(path("attributables.txt"),
                        format_attributables(res.timeline.survey.attributables,
                                             station_names(scenario_network(sc))));
        write_text_file(path("sidecar.txt"),
                        format_sidecar(res.timeline.survey.sidecar, res.timeline.population));
        write_text_file(path("catalog.txt"), format_catalog(res.timeline.catalog));
        write_text_file(path("timeline.txt"), format_timeline(res.timeline.rows));
        write_text_file(path("gabbard.txt"), format_gabbard(res.gabbard_rows));
        summary = strprintf("fragmentation: %zu core fragments, %zu cataloged rows\n",
                            res.timeline.core.size(), res.gabbard_rows.size());
        summary += format_timeline(res.timeline.rows);
    } else {
        throw std::invalid_argument("unknown scenario mode: " + sc.mode);
    }
    write_text_file(path("summary.txt"), summary);
    return summary;
}

}  // namespace debrisim
