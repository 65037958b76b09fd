// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "generate.hpp"
#include "mmcoex/geo.hpp"

namespace mmcoex::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    kExitConfigError = 3,
    kExitRuntimeError = 4,
};

/// Exit class for an exception escaping a command.
int exit_code_for(const std::exception& e);

struct AnalyzeOptions {
    std::filesystem::path fs_db;
    /// Defaults to the mean receiver coordinate.
    std::optional<GeoPoint> center;
    std::vector<double> radii_km{1, 2, 5, 10, 20, 50, 100, 200, 300};
    double height_bin_m = 5.0;
    double tilt_bin_deg = 1.0;
    double beamwidth_bin_deg = 0.1;
    std::filesystem::path out = "analysis";
};

/// Writes density.csv, height.csv, tilt.csv, tilt_height.csv and
/// beamwidth.csv under `out`; returns their paths.
std::vector<std::filesystem::path> cmd_analyze(const AnalyzeOptions& opt, std::ostream& log);

struct SimulateOptions {
    std::filesystem::path config;
    std::filesystem::path fs_db;
    /// Empty means an open area without buildings.
    std::filesystem::path buildings;
    std::filesystem::path out = "results";
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    bool literal_eq9 = false;
    /// Empty uses the built-in FCC e-band table.
    std::filesystem::path fs_pattern;
    double pdf_bin_db = 1.0;
};

struct CellResult {
    double eirp_dbm = 0.0;
    double carrier_ghz = 0.0;
    std::string label;
    std::vector<double> pooled_inr_db;
    std::vector<double> per_fs_mean_inr_db;
};

struct SimulateResult {
    std::vector<CellResult> cells;
    std::size_t stations_used = 0;
    std::vector<std::filesystem::path> files;
};

/// Runs every (EIRP, carrier) cell of the scenario and writes per-FS INR
/// samples, per-FS summaries, pooled CDF/PDF tables, summary.csv and
/// manifest.json under `out`.
SimulateResult cmd_simulate(const SimulateOptions& opt, std::ostream& log);

enum class GenerateKind { Registry, Buildings, Scenario, All };

struct GenerateOptions {
    GenerateKind kind = GenerateKind::All;
    std::filesystem::path out = "synthetic";
    std::uint64_t seed = 1;
    gen::RegistryParams registry;
    gen::GridParams grid;
    std::int64_t ue_count = 100;
    std::int64_t realizations = 100;
};

/// Registry: fs_db.csv. Buildings: buildings.geojson. Scenario:
/// scenario.cfg. All: the three, with FSs on grid rooftops.
std::vector<std::filesystem::path> cmd_generate(const GenerateOptions& opt, std::ostream& log);

/// Label of one sweep cell, e.g. "eirp33_f73p5".
std::string cell_label(double eirp_dbm, double carrier_ghz);

} // namespace mmcoex::cli
