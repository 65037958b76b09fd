// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "mmcoex/csv.hpp"
#include "mmcoex/error.hpp"
#include "mmcoex/fs_analytics.hpp"
#include "mmcoex/ingest.hpp"
#include "scenes.hpp"

using namespace mmcoex;
using namespace mmcoex::cli;
namespace fs = std::filesystem;
using Catch::Matchers::WithinRel;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MMCOEX_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::set<std::string> keys(const nlohmann::json& j) {
    std::set<std::string> out;
    for (const auto& [k, v] : j.items()) {
        out.insert(k);
    }
    return out;
}

// Single FS at the origin with its beam toward the east.
void write_single_fs(const fs::path& path) {
    FixedStation s;
    s.pair_id = "P1";
    s.link_id = "P1-L1";
    s.rx_pos = {-87.6359, 41.8789};
    s.tx_pos = {-87.6259, 41.8789};
    s.rx_height_m = 20.0;
    csv::write_file(path, fs_database_csv({s}));
}

} // namespace

TEST_CASE("cell labels", "[cli]") {
    CHECK(cell_label(33, 73.5) == "eirp33_f73p5");
    CHECK(cell_label(43, 83.5) == "eirp43_f83p5");
    CHECK(cell_label(-3.5, 80) == "eirpm3p5_f80");
}

TEST_CASE("exit code classes", "[cli]") {
    CHECK(exit_code_for(InputError("x")) == kExitInputError);
    CHECK(exit_code_for(ConfigError("x")) == kExitConfigError);
    CHECK(exit_code_for(ModelError("x")) == kExitRuntimeError);
    CHECK(exit_code_for(std::runtime_error("x")) == kExitRuntimeError);
}

TEST_CASE("generate: grid, registry and reproducibility", "[cli]") {
    const auto dir = testing::scratch_dir("generate");
    std::ostringstream log;
    GenerateOptions opt;
    opt.out = dir / "a";
    opt.seed = 5;
    opt.registry.stations = 300;
    const auto files = cmd_generate(opt, log);
    CHECK(files.size() == 3);
    CHECK(fs::exists(opt.out / "manifest.json"));
    const auto b = load_buildings(opt.out / "buildings.geojson", opt.grid.origin);
    CHECK(b.footprints.size() == 100);
    CHECK(b.rejected.empty());
    const auto r = load_fs_database(opt.out / "fs_db.csv");
    CHECK(r.stations.size() == 300);
    CHECK(r.rejected.empty());
    CHECK_NOTHROW(load_scenario(opt.out / "scenario.cfg"));

    opt.out = dir / "b";
    cmd_generate(opt, log);
    for (const char* name : {"fs_db.csv", "buildings.geojson", "scenario.cfg"}) {
        CHECK(csv::read_file(dir / "a" / name) == csv::read_file(dir / "b" / name));
    }
}

TEST_CASE("generate: registry heights follow the declared law", "[cli][property]") {
    gen::RegistryParams p;
    p.stations = 10000;
    const auto h = analytics::height_distribution(gen::generate_registry(p, 77));
    CHECK_THAT(h.median, WithinRel(p.height_median_m, 0.02));
    CHECK_THAT(h.p5, WithinRel(gen::registry_height_quantile(p, 0.05), 0.02));
    CHECK_THAT(h.p95, WithinRel(gen::registry_height_quantile(p, 0.95), 0.02));
    CHECK_THAT(gen::registry_height_quantile(p, 0.05), WithinRel(12.43, 1e-3));
}

TEST_CASE("analyze: five tables, radii honoured, missing input", "[cli]") {
    const auto dir = testing::scratch_dir("analyze");
    gen::RegistryParams p;
    p.stations = 500;
    csv::write_file(dir / "fs_db.csv", fs_database_csv(gen::generate_registry(p, 1)));
    REQUIRE(run_cli("analyze --fs-db " + (dir / "fs_db.csv").string() + " --radii 5,10,50 --out " +
                    (dir / "out").string()) == 0);
    for (const char* name : {"density.csv", "height.csv", "tilt.csv", "tilt_height.csv", "beamwidth.csv",
                             "manifest.json"}) {
        CHECK(fs::exists(dir / "out" / name));
    }
    const auto rows = csv::lines(csv::read_file(dir / "out" / "density.csv"));
    REQUIRE(rows.size() == 4);
    CHECK(rows[1].second.rfind("5,", 0) == 0);
    CHECK(rows[3].second.rfind("50,", 0) == 0);

    CHECK(run_cli("analyze --fs-db " + (dir / "missing.csv").string() + " --out " +
                  (dir / "x").string()) == kExitInputError);
    CHECK(run_cli("analyze --out " + (dir / "x").string()) == kExitConfigError);
    CHECK(run_cli("frobnicate") == kExitConfigError);
}

TEST_CASE("simulate: single-link smoke run", "[cli]") {
    const auto dir = testing::scratch_dir("simulate_smoke");
    write_single_fs(dir / "fs.csv");
    csv::write_file(dir / "s.cfg", "ue_count = 1\nrealizations = 1\neirp_max_dbm = 33\ncarrier_ghz = 73.5\n");
    SimulateOptions opt;
    opt.config = dir / "s.cfg";
    opt.fs_db = dir / "fs.csv";
    opt.out = dir / "out";
    opt.threads = 1;
    std::ostringstream log;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = cmd_simulate(opt, log);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    CHECK(dt.count() < 1.0);
    REQUIRE(r.cells.size() == 1);
    CHECK(r.stations_used == 1);
    CHECK(r.cells[0].pooled_inr_db.size() == 1);
}

TEST_CASE("simulate: sweep cells, seed override and manifest", "[cli]") {
    const auto dir = testing::scratch_dir("simulate_sweep");
    write_single_fs(dir / "fs.csv");
    csv::write_file(dir / "s.cfg", "ue_count = 20\nrealizations = 3\nseed = 4\n");
    const std::string base = "simulate --config " + (dir / "s.cfg").string() + " --fs-db " +
                             (dir / "fs.csv").string() + " --threads 1";
    REQUIRE(run_cli(base + " --out " + (dir / "a").string()) == 0);
    REQUIRE(run_cli(base + " --seed 9 --literal-eq9 --out " + (dir / "b").string()) == 0);

    std::size_t inr_files = 0;
    for (const auto& e : fs::directory_iterator(dir / "a")) {
        inr_files += e.path().filename().string().rfind("inr_", 0) == 0 ? 1 : 0;
    }
    CHECK(inr_files == 4);
    const auto summary = csv::lines(csv::read_file(dir / "a" / "summary.csv"));
    CHECK(summary.size() == 5);

    const auto ma = nlohmann::json::parse(csv::read_file(dir / "a" / "manifest.json"));
    const auto mb = nlohmann::json::parse(csv::read_file(dir / "b" / "manifest.json"));
    CHECK(keys(ma) == keys(mb));
    CHECK(ma["seed"] == 4);
    CHECK(mb["seed"] == 9);
    CHECK(mb["options"]["literal_eq9"] == true);
    CHECK(mb["resolved_config"].get<std::string>().find("ue_beam_cap = false") != std::string::npos);
    CHECK(ma["inputs"].size() == 2);
    CHECK(ma["inputs"][0]["sha256"].get<std::string>().size() == 64);
    CHECK(csv::read_file(dir / "a" / "inr_eirp33_f73p5.csv") !=
          csv::read_file(dir / "b" / "inr_eirp33_f73p5.csv"));

    // The resolved config alone reproduces the run.
    csv::write_file(dir / "resolved.cfg", ma["resolved_config"].get<std::string>());
    REQUIRE(run_cli("simulate --config " + (dir / "resolved.cfg").string() + " --fs-db " +
                    (dir / "fs.csv").string() + " --out " + (dir / "c").string()) == 0);
    CHECK(csv::read_file(dir / "a" / "inr_eirp43_f83p5.csv") ==
          csv::read_file(dir / "c" / "inr_eirp43_f83p5.csv"));
}

TEST_CASE("simulate: error classes", "[cli]") {
    const auto dir = testing::scratch_dir("simulate_errors");
    write_single_fs(dir / "fs.csv");
    csv::write_file(dir / "bad.cfg", "realizations = 0\n");
    csv::write_file(dir / "far.cfg", "origin_lon = -80\norigin_lat = 40\n");
    const std::string fsdb = " --fs-db " + (dir / "fs.csv").string() + " --out " + (dir / "o").string();
    CHECK(run_cli("simulate --config " + (dir / "bad.cfg").string() + fsdb) == kExitConfigError);
    CHECK(run_cli("simulate --config " + (dir / "nope.cfg").string() + fsdb) == kExitInputError);
    CHECK(run_cli("simulate --config " + (dir / "far.cfg").string() + fsdb) == kExitConfigError);
}
