// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace mmcoex;
using namespace mmcoex::cli;

namespace {

GeoPoint to_point(const std::vector<double>& lon_lat) {
    return {lon_lat.at(0), lon_lat.at(1)};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mmcoex: UE-to-fixed-service uplink interference in the 70/80 GHz bands"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // analyze
    AnalyzeOptions an;
    std::vector<double> an_center;
    auto* analyze = app.add_subcommand("analyze", "Registry analytics: density, height, tilt, beamwidth");
    analyze->add_option("--fs-db", an.fs_db, "FS database CSV")->required();
    analyze->add_option("--center", an_center, "Density centre as lon,lat (default: mean receiver)")
        ->delimiter(',')
        ->expected(2);
    analyze->add_option("--radii", an.radii_km, "Density radii in km, comma-separated")
        ->delimiter(',')
        ->capture_default_str();
    analyze->add_option("--out", an.out, "Output directory")->capture_default_str();
    analyze->add_option("--height-bin", an.height_bin_m, "Height bin width in m")->capture_default_str();
    analyze->add_option("--tilt-bin", an.tilt_bin_deg, "Tilt bin width in degrees")->capture_default_str();
    analyze->add_option("--beamwidth-bin", an.beamwidth_bin_deg, "Beamwidth bin width in degrees")
        ->capture_default_str();

    // simulate
    SimulateOptions sim;
    std::uint64_t sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo INR over the scenario's EIRP/carrier sweep");
    simulate->add_option("--config", sim.config, "Scenario file")->required();
    simulate->add_option("--fs-db", sim.fs_db, "FS database CSV")->required();
    simulate->add_option("--buildings", sim.buildings, "Building footprints GeoJSON");
    simulate->add_option("--out", sim.out, "Output directory")->capture_default_str();
    auto* seed_opt = simulate->add_option("--seed", sim_seed, "Override the scenario seed");
    simulate->add_option("--threads", sim.threads, "Worker threads, 0 = hardware concurrency")
        ->capture_default_str();
    simulate->add_flag("--literal-eq9", sim.literal_eq9,
                       "Drop the FTBR floor on the UE beam pattern");
    simulate->add_option("--fs-pattern", sim.fs_pattern, "FS pattern table CSV (default: built-in FCC table)");
    simulate->add_option("--pdf-bin", sim.pdf_bin_db, "INR PDF bin width in dB")->capture_default_str();

    // generate
    GenerateOptions gen;
    std::vector<double> gen_center;
    std::vector<int> gen_blocks;
    std::string spatial = "gaussian";
    const std::map<std::string, GenerateKind> kinds{{"registry", GenerateKind::Registry},
                                                    {"buildings", GenerateKind::Buildings},
                                                    {"scenario", GenerateKind::Scenario},
                                                    {"all", GenerateKind::All}};
    auto* generate = app.add_subcommand("generate", "Synthetic registry, building grid and scenario");
    std::string kind = "all";
    generate->add_option("kind", kind, "registry | buildings | scenario | all")
        ->check(CLI::IsMember({"registry", "buildings", "scenario", "all"}))
        ->capture_default_str();
    generate->add_option("--out", gen.out, "Output directory")->capture_default_str();
    generate->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    generate->add_option("--center", gen_center, "Registry centre / grid origin as lon,lat")
        ->delimiter(',')
        ->expected(2);
    generate->add_option("--stations", gen.registry.stations, "Number of FS links")->capture_default_str();
    generate->add_option("--spatial", spatial, "Registry layout")
        ->check(CLI::IsMember({"uniform", "gaussian"}))
        ->capture_default_str();
    generate->add_option("--spread-km", gen.registry.spread_km, "Registry spread radius in km")
        ->capture_default_str();
    generate->add_option("--links-per-pair", gen.registry.max_links_per_pair, "Maximum links per pair")
        ->capture_default_str();
    generate->add_option("--height-median", gen.registry.height_median_m, "Median FS height in m")
        ->capture_default_str();
    generate->add_option("--height-sigma", gen.registry.height_log_sigma, "Log-sigma of FS heights")
        ->capture_default_str();
    generate->add_option("--tilt-sigma", gen.registry.tilt_sigma_deg, "Std. dev. of FS tilt in degrees")
        ->capture_default_str();
    generate->add_option("--tilt-height-slope", gen.registry.tilt_height_slope_m_per_deg,
                         "Height decrease per degree of tilt")
        ->capture_default_str();
    generate->add_option("--blocks", gen_blocks, "Grid blocks as nx,ny")->delimiter(',')->expected(2);
    generate->add_option("--block-size", gen.grid.block_size_m, "Block edge in m")->capture_default_str();
    generate->add_option("--street-width", gen.grid.street_width_m, "Street width in m")
        ->capture_default_str();
    generate->add_option("--building-height-min", gen.grid.height_min_m, "Lowest building in m")
        ->capture_default_str();
    generate->add_option("--building-height-max", gen.grid.height_max_m, "Tallest building in m")
        ->capture_default_str();
    generate->add_option("--ue-count", gen.ue_count, "UEs in the generated scenario")->capture_default_str();
    generate->add_option("--realizations", gen.realizations, "Realizations in the generated scenario")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (analyze->parsed()) {
            if (!an_center.empty()) {
                an.center = to_point(an_center);
            }
            const auto files = cmd_analyze(an, std::cerr);
            std::cerr << "wrote " << files.size() << " tables to " << an.out.string() << '\n';
        } else if (simulate->parsed()) {
            if (seed_opt->count() > 0) {
                sim.seed = sim_seed;
            }
            const auto result = cmd_simulate(sim, std::cerr);
            std::cerr << "wrote " << result.cells.size() << " result sets to " << sim.out.string()
                      << '\n';
        } else if (generate->parsed()) {
            if (!gen_center.empty()) {
                gen.registry.center = to_point(gen_center);
                gen.grid.origin = gen.registry.center;
            }
            if (!gen_blocks.empty()) {
                gen.grid.blocks_x = gen_blocks.at(0);
                gen.grid.blocks_y = gen_blocks.at(1);
            }
            gen.kind = kinds.at(kind);
            gen.registry.spatial = spatial == "uniform" ? gen::Spatial::Uniform : gen::Spatial::Gaussian;
            const auto files = cmd_generate(gen, std::cerr);
            std::cerr << "wrote " << files.size() << " files to " << gen.out.string() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}
