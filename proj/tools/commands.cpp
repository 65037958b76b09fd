// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <memory>
#include <ostream>

#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "mmcoex/antenna.hpp"
#include "mmcoex/csv.hpp"
#include "mmcoex/engine.hpp"
#include "mmcoex/error.hpp"
#include "mmcoex/fs_analytics.hpp"
#include "mmcoex/ingest.hpp"
#include "mmcoex/spatial_index.hpp"
#include "mmcoex/stats.hpp"

namespace mmcoex::cli {
namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InputError*>(&e) != nullptr) {
        return kExitInputError;
    }
    if (dynamic_cast<const ConfigError*>(&e) != nullptr) {
        return kExitConfigError;
    }
    return kExitRuntimeError;
}

std::string cell_label(double eirp_dbm, double carrier_ghz) {
    std::string label = "eirp" + csv::format_double(eirp_dbm) + "_f" + csv::format_double(carrier_ghz);
    std::replace(label.begin(), label.end(), '.', 'p');
    std::replace(label.begin(), label.end(), '-', 'm');
    return label;
}

namespace {

void write_manifest(const fs::path& out, json manifest) {
    manifest["tool"] = "mmcoex";
    manifest["version"] = kVersion;
    manifest["timestamp"] = utc_timestamp();
    csv::write_file(out / "manifest.json", manifest.dump(2) + "\n");
}

json input_entry(const std::string& role, const fs::path& path) {
    return {{"role", role}, {"path", path.string()}, {"sha256", sha256_file(path)}};
}

void log_rejections(std::ostream& log, const fs::path& path,
                    const std::vector<Diagnostic>& rejected) {
    for (const auto& d : rejected) {
        log << "warning: " << path.string() << ": rejected " << to_string(d) << '\n';
    }
}

std::vector<std::string> relative(const std::vector<fs::path>& files, const fs::path& root) {
    std::vector<std::string> out;
    for (const auto& f : files) {
        out.push_back(fs::relative(f, root).string());
    }
    return out;
}

} // namespace

// --- analyze ---------------------------------------------------------------

std::vector<fs::path> cmd_analyze(const AnalyzeOptions& opt, std::ostream& log) {
    const auto loaded = load_fs_database(opt.fs_db);
    log_rejections(log, opt.fs_db, loaded.rejected);
    const auto& stations = loaded.stations;
    if (stations.empty()) {
        throw InputError(opt.fs_db.string() + ": no valid stations");
    }

    GeoPoint center;
    if (opt.center) {
        center = *opt.center;
        validate(center);
    } else {
        for (const auto& s : stations) {
            center.longitude += s.rx_pos.longitude;
            center.latitude += s.rx_pos.latitude;
        }
        center.longitude /= static_cast<double>(stations.size());
        center.latitude /= static_cast<double>(stations.size());
    }

    using namespace analytics;
    const std::vector<std::pair<fs::path, std::string>> outputs{
        {opt.out / "density.csv", density_csv(density_vs_radius(stations, center, opt.radii_km))},
        {opt.out / "height.csv",
         histogram_csv(height_distribution(stations, opt.height_bin_m), "height_m")},
        {opt.out / "tilt.csv", histogram_csv(tilt_histogram(stations, opt.tilt_bin_deg), "tilt_deg")},
        {opt.out / "tilt_height.csv",
         tilt_height_csv(tilt_height_profile(stations, opt.tilt_bin_deg))},
        {opt.out / "beamwidth.csv",
         histogram_csv(beamwidth_histogram(stations, opt.beamwidth_bin_deg), "beamwidth_deg")},
    };
    std::vector<fs::path> files;
    for (const auto& [path, text] : outputs) {
        csv::write_file(path, text);
        files.push_back(path);
    }
    log << "analyzed " << stations.size() << " links ("
        << loaded.rejected.size() << " rejected); tilt within [-10, 10] deg: "
        << tilt_fraction_within(stations, -10.0, 10.0) << '\n';

    write_manifest(opt.out, {{"command", "analyze"},
                             {"inputs", json::array({input_entry("fs_db", opt.fs_db)})},
                             {"config",
                              {{"center", {center.longitude, center.latitude}},
                               {"radii_km", opt.radii_km},
                               {"height_bin_m", opt.height_bin_m},
                               {"tilt_bin_deg", opt.tilt_bin_deg},
                               {"beamwidth_bin_deg", opt.beamwidth_bin_deg}}},
                             {"outputs", relative(files, opt.out)}});
    return files;
}

// --- simulate --------------------------------------------------------------

SimulateResult cmd_simulate(const SimulateOptions& opt, std::ostream& log) {
    Scenario scenario = load_scenario(opt.config);
    if (opt.seed) {
        scenario.seed = *opt.seed;
    }
    if (opt.literal_eq9) {
        scenario.ue_beam_cap = false;
    }
    if (!(opt.pdf_bin_db > 0.0)) {
        throw ConfigError("PDF bin width must be positive");
    }

    const auto pattern = std::make_shared<const FsPatternTable>(
        opt.fs_pattern.empty() ? FsPatternTable::fcc_eband() : FsPatternTable::load_csv(opt.fs_pattern));

    const auto loaded = load_fs_database(opt.fs_db);
    log_rejections(log, opt.fs_db, loaded.rejected);

    std::vector<Footprint> footprints;
    if (!opt.buildings.empty()) {
        auto b = load_buildings(opt.buildings, scenario.origin);
        log_rejections(log, opt.buildings, b.rejected);
        if (b.holes_dropped > 0) {
            log << "warning: " << opt.buildings.string() << ": dropped " << b.holes_dropped
                << " interior rings\n";
        }
        footprints = std::move(b.footprints);
    }
    const BuildingIndex index(std::move(footprints));

    const auto area = planar_area(scenario);
    const SiteOptions site_opt{scenario.origin, pattern, scenario.fs_ftbr_db,
                               scenario.noise_bandwidth_hz, scenario.noise_temperature_k};
    std::vector<FsSite> sites;
    for (const auto& st : loaded.stations) {
        try {
            if (!point_in_polygon(project(st.rx_pos, scenario.origin), area)) {
                continue;
            }
            sites.push_back(make_site(st, site_opt));
        } catch (const ConfigError& e) {
            log << "warning: skipping link " << st.link_id << ": " << e.what() << '\n';
        }
    }
    if (sites.empty()) {
        throw ConfigError("no fixed stations lie inside the scenario area");
    }
    log << "simulating " << sites.size() << " FS receivers, " << index.footprints().size()
        << " buildings, " << scenario.ue_count << " UEs x " << scenario.realizations
        << " realizations\n";

    SimulateResult result;
    result.stations_used = sites.size();
    json cells = json::array();

    for (double eirp : scenario.eirp_max_dbm) {
        for (double carrier : scenario.carrier_ghz) {
            SimulationConfig cfg = simulation_config(scenario, eirp, carrier);
            cfg.threads = opt.threads;
            const SimulationResult sim = run(cfg, sites, index);
            CellResult cell{eirp, carrier, cell_label(eirp, carrier), pooled_inr(sim),
                            per_fs_mean_inr(sim)};

            std::string samples = "fs_index,pair_id,link_id,realization,aggregate_dbm,inr_db\n";
            std::string per_fs =
                "fs_index,pair_id,link_id,noise_power_dbm,mean_inr_db,median_inr_db,p95_inr_db,"
                "exceed_count,realizations\n";
            for (const auto& rep : sim.reports) {
                const std::string ids =
                    std::to_string(rep.fs_index) + ',' + rep.pair_id + ',' + rep.link_id + ',';
                for (std::size_t r = 0; r < rep.samples.size(); ++r) {
                    samples += ids + std::to_string(r) + ',' +
                               csv::format_double(rep.samples[r].aggregate_dbm) + ',' +
                               csv::format_double(rep.samples[r].inr_db) + '\n';
                }
                per_fs += ids + csv::format_double(rep.noise_power_dbm) + ',' +
                          csv::format_double(rep.mean_inr_db) + ',' +
                          csv::format_double(rep.median_inr_db) + ',' +
                          csv::format_double(rep.p95_inr_db) + ',' +
                          std::to_string(rep.exceed_count) + ',' +
                          std::to_string(rep.samples.size()) + '\n';
            }
            const stats::EmpiricalDistribution pooled(cell.pooled_inr_db);
            const std::vector<std::pair<fs::path, std::string>> outputs{
                {opt.out / ("inr_" + cell.label + ".csv"), samples},
                {opt.out / ("fs_summary_" + cell.label + ".csv"), per_fs},
                {opt.out / ("cdf_" + cell.label + ".csv"), stats::cdf_csv(pooled, "inr_db")},
                {opt.out / ("pdf_" + cell.label + ".csv"),
                 stats::pdf_csv(stats::pdf_histogram(pooled, opt.pdf_bin_db), "inr_db")},
            };
            for (const auto& [path, text] : outputs) {
                csv::write_file(path, text);
                result.files.push_back(path);
            }
            cells.push_back({{"label", cell.label},
                             {"eirp_dbm", eirp},
                             {"carrier_ghz", carrier},
                             {"links_evaluated", sim.counters.evaluated},
                             {"links_blocked", sim.counters.blocked},
                             {"links_culled", sim.counters.culled},
                             {"links_excluded", sim.counters.excluded},
                             {"links_beyond_model_range", sim.counters.beyond_model_range}});
            if (sim.counters.beyond_model_range > 0) {
                log << "warning: " << cell.label << ": " << sim.counters.beyond_model_range
                    << " links beyond the 5 km UMi validity range\n";
            }
            result.cells.push_back(std::move(cell));
        }
    }

    // Table-II-shaped summary: one row per (EIRP, view), one column group per band.
    std::string summary = "scenario,eirp_dbm,view";
    for (double carrier : scenario.carrier_ghz) {
        const std::string f = csv::format_double(carrier) + "GHz";
        summary += ",mean_" + f + ",median_" + f + ",p95_" + f + ",exceed_" + f;
    }
    summary += '\n';
    for (double eirp : scenario.eirp_max_dbm) {
        for (const char* view : {"pooled", "per_fs_mean"}) {
            summary += scenario.name + ',' + csv::format_double(eirp) + ',' + view;
            for (double carrier : scenario.carrier_ghz) {
                const auto it = std::find_if(result.cells.begin(), result.cells.end(), [&](const CellResult& c) {
                    return c.eirp_dbm == eirp && c.carrier_ghz == carrier;
                });
                const stats::EmpiricalDistribution d(std::string_view(view) == "pooled"
                                                         ? it->pooled_inr_db
                                                         : it->per_fs_mean_inr_db);
                summary += ',' + csv::format_double(stats::mean(d)) + ',' +
                           csv::format_double(stats::percentile(d, 50.0)) + ',' +
                           csv::format_double(stats::percentile(d, 95.0)) + ',' +
                           csv::format_double(stats::exceedance(d, scenario.inr_threshold_db));
            }
            summary += '\n';
        }
    }
    csv::write_file(opt.out / "summary.csv", summary);
    result.files.push_back(opt.out / "summary.csv");

    json inputs = json::array({input_entry("config", opt.config), input_entry("fs_db", opt.fs_db)});
    if (!opt.buildings.empty()) {
        inputs.push_back(input_entry("buildings", opt.buildings));
    }
    if (!opt.fs_pattern.empty()) {
        inputs.push_back(input_entry("fs_pattern", opt.fs_pattern));
    }
    write_manifest(opt.out, {{"command", "simulate"},
                             {"seed", scenario.seed},
                             {"resolved_config", scenario_text(scenario)},
                             {"options",
                              {{"threads", opt.threads},
                               {"literal_eq9", opt.literal_eq9},
                               {"pdf_bin_db", opt.pdf_bin_db},
                               {"fs_pattern", opt.fs_pattern.empty() ? "builtin:fcc_eband"
                                                                     : opt.fs_pattern.string()}}},
                             {"inputs", inputs},
                             {"stations_used", sites.size()},
                             {"cells", cells},
                             {"outputs", relative(result.files, opt.out)}});
    return result;
}

// --- generate --------------------------------------------------------------

std::vector<fs::path> cmd_generate(const GenerateOptions& opt, std::ostream& log) {
    std::vector<fs::path> files;
    json params;
    const auto emit = [&](const fs::path& path, const std::string& text) {
        csv::write_file(path, text);
        files.push_back(path);
    };
    const auto registry_json = [&] {
        const auto& r = opt.registry;
        json bw = json::array();
        for (const auto& [v, w] : r.beamwidths) {
            bw.push_back({v, w});
        }
        return json{{"stations", r.stations},
                    {"center", {r.center.longitude, r.center.latitude}},
                    {"spatial", r.spatial == gen::Spatial::Uniform ? "uniform" : "gaussian"},
                    {"spread_km", r.spread_km},
                    {"max_links_per_pair", r.max_links_per_pair},
                    {"height_median_m", r.height_median_m},
                    {"height_log_sigma", r.height_log_sigma},
                    {"tilt_sigma_deg", r.tilt_sigma_deg},
                    {"tilt_height_slope_m_per_deg", r.tilt_height_slope_m_per_deg},
                    {"beamwidths", bw}};
    };
    const auto grid_json = [&] {
        const auto& g = opt.grid;
        return json{{"origin", {g.origin.longitude, g.origin.latitude}},
                    {"blocks", {g.blocks_x, g.blocks_y}},
                    {"block_size_m", g.block_size_m},
                    {"street_width_m", g.street_width_m},
                    {"height_range_m", {g.height_min_m, g.height_max_m}}};
    };

    switch (opt.kind) {
    case GenerateKind::Registry: {
        const auto stations = gen::generate_registry(opt.registry, opt.seed);
        emit(opt.out / "fs_db.csv", fs_database_csv(stations));
        params["registry"] = registry_json();
        log << "generated " << stations.size() << " FS links\n";
        break;
    }
    case GenerateKind::Buildings: {
        const auto grid = gen::generate_grid(opt.grid, opt.seed);
        emit(opt.out / "buildings.geojson", buildings_geojson(grid, opt.grid.origin));
        params["grid"] = grid_json();
        log << "generated " << grid.size() << " building footprints\n";
        break;
    }
    case GenerateKind::Scenario: {
        const auto s = gen::grid_scenario(opt.grid, opt.ue_count, opt.realizations, opt.seed);
        emit(opt.out / "scenario.cfg", scenario_text(s));
        params["grid"] = grid_json();
        break;
    }
    case GenerateKind::All: {
        const auto grid = gen::generate_grid(opt.grid, opt.seed);
        const auto stations = gen::generate_rooftop_registry(opt.registry, opt.grid, grid, opt.seed + 1);
        const auto s = gen::grid_scenario(opt.grid, opt.ue_count, opt.realizations, opt.seed);
        emit(opt.out / "buildings.geojson", buildings_geojson(grid, opt.grid.origin));
        emit(opt.out / "fs_db.csv", fs_database_csv(stations));
        emit(opt.out / "scenario.cfg", scenario_text(s));
        params["registry"] = registry_json();
        params["grid"] = grid_json();
        log << "generated " << grid.size() << " buildings, " << stations.size()
            << " rooftop FS links and a matching scenario\n";
        break;
    }
    }
    params["seed"] = opt.seed;
    params["ue_count"] = opt.ue_count;
    params["realizations"] = opt.realizations;
    write_manifest(opt.out, {{"command", "generate"},
                             {"seed", opt.seed},
                             {"config", params},
                             {"outputs", relative(files, opt.out)}});
    return files;
}

} // namespace mmcoex::cli
