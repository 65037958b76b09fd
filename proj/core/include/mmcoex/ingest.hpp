// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mmcoex/geo.hpp"

namespace mmcoex {

/// One registered FS receiver (a row of the link database).
struct FixedStation {
    std::string pair_id;
    std::string link_id;
    GeoPoint rx_pos;
    double rx_height_m = 0.0;
    /// Far end of the link; the receive beam points at it.
    GeoPoint tx_pos;
    double max_gain_dbi = 43.0;
    double beamwidth_deg = 1.0;
    /// Negative values point below the horizon.
    double tilt_deg = 0.0;
    double noise_figure_db = 5.0;
    double center_freq_ghz = 73.5;
    double bandwidth_mhz = 1000.0;

    friend bool operator==(const FixedStation&, const FixedStation&) = default;
};

/// Throws ConfigError naming the offending field.
void validate(const FixedStation& fs);

/// Row- or feature-level rejection reason.
struct Diagnostic {
    std::size_t line = 0;
    std::string field;
    std::string message;
};

std::string to_string(const Diagnostic& d);

inline const char* const kFsDatabaseHeader =
    "pair_id,link_id,rx_lon,rx_lat,rx_height_m,tx_lon,tx_lat,max_gain_dbi,beamwidth_deg,"
    "tilt_deg,noise_figure_db,center_freq_ghz,bandwidth_mhz";

struct FsLoadResult {
    std::vector<FixedStation> stations;
    std::vector<Diagnostic> rejected;
};

/// Parses the FS link-database CSV. Column order follows the header; extra
/// columns are ignored. A missing column throws InputError; bad rows are
/// reported in `rejected` and skipped.
FsLoadResult parse_fs_database(const std::string& text);
FsLoadResult load_fs_database(const std::filesystem::path& path);

std::string fs_database_csv(const std::vector<FixedStation>& stations);

struct BuildingLoadResult {
    std::vector<Footprint> footprints;
    std::vector<Diagnostic> rejected;
    std::size_t holes_dropped = 0;
};

/// Parses a GeoJSON FeatureCollection of Polygon / MultiPolygon features
/// with a numeric `height_m` property, projected about `origin`. Interior
/// rings are dropped and counted. `Diagnostic::line` holds the 1-based
/// feature number. Malformed JSON throws InputError.
BuildingLoadResult parse_buildings(const std::string& geojson, const GeoPoint& origin);
BuildingLoadResult load_buildings(const std::filesystem::path& path, const GeoPoint& origin);

/// FeatureCollection text for the footprints, unprojected about `origin`.
std::string buildings_geojson(const std::vector<Footprint>& footprints, const GeoPoint& origin);

/// Simulation scenario. Defaults reproduce the reference study settings.
struct Scenario {
    std::string name = "scenario";
    GeoPoint origin{-87.6359, 41.8789};
    /// Defaults to a 1 km square centred on the origin.
    std::vector<GeoPoint> area_polygon;
    std::int64_t ue_count = 100;
    double ue_height_m = 1.5;
    double gnb_height_m = 6.0;
    double gnb_distance_min_m = 10.0;
    double gnb_distance_max_m = 100.0;
    /// Every (EIRP, carrier) combination is simulated.
    std::vector<double> eirp_max_dbm{33.0, 43.0};
    std::vector<double> carrier_ghz{73.5, 83.5};
    std::int64_t realizations = 100;
    std::uint64_t seed = 1;
    double inr_threshold_db = -6.0;
    bool ue_beam_cap = true;
    double ue_beam_3db_deg = 25.0;
    double ue_element_3db_deg = 65.0;
    double ue_ftbr_db = 30.0;
    double fs_ftbr_db = 55.0;
    bool shadowing = true;
    double sigma_los_db = 4.0;
    double sigma_nlos_db = 7.82;
    double noise_bandwidth_hz = 1e9;
    double noise_temperature_k = 290.0;
    /// Links longer than this are skipped; 0 disables culling.
    double cull_distance_m = 10'000.0;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// 1 km square centred on `origin`, counter-clockwise.
std::vector<GeoPoint> default_area(const GeoPoint& origin);

/// Area vertices projected about the origin.
std::vector<PlanarPoint> planar_area(const Scenario& s);

/// Throws ConfigError on any invariant violation.
void validate(const Scenario& s);

/// `key = value` lines; `#` starts a comment. Lists are comma separated;
/// `area_polygon` is `lon,lat; lon,lat; ...`. With `strict`, unknown keys
/// are an error.
Scenario parse_scenario(const std::string& text, bool strict = true);
Scenario load_scenario(const std::filesystem::path& path, bool strict = true);

/// Key-value text that parse_scenario() reads back to an equal Scenario.
std::string scenario_text(const Scenario& s);

} // namespace mmcoex
