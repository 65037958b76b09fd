// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mmcoex/antenna.hpp"
#include "mmcoex/geo.hpp"
#include "mmcoex/ingest.hpp"
#include "mmcoex/propagation.hpp"
#include "mmcoex/spatial_index.hpp"

namespace mmcoex {

/// Named random substreams. Each (seed, realization, purpose) triple seeds an
/// independent generator, so UE drops are shared across EIRP and carrier
/// sweeps with the same seed.
enum class RandomStream : std::uint64_t { UeDrop = 1, Shadowing = 2 };

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t realization, RandomStream purpose);

struct UserTerminal {
    PlanarPoint pos;
    double height_m = 1.5;
    double beam_azimuth_deg = 0.0;
    double beam_elevation_deg = 0.0;
};

struct DropConfig {
    std::int64_t ue_count = 0;
    double ue_height_m = 1.5;
    double gnb_height_m = 6.0;
    double gnb_distance_min_m = 10.0;
    double gnb_distance_max_m = 100.0;
};

/// Below this acceptance ratio the drop area is considered built over.
inline constexpr double kMinDropAcceptance = 1e-3;

/// Uniform outdoor UE placement by rejection sampling over the area minus
/// building footprints. Each UE draws its position, then a beam azimuth
/// U(0, 360) and a serving-gNB distance U(min, max) that fixes the beam
/// elevation atan((h_gNB - h_UE) / d). Draws are sequential per UE, so the
/// first N terminals do not depend on ue_count.
/// Throws ModelError when the acceptance ratio falls below 0.1 %.
std::vector<UserTerminal> drop_ues(const DropConfig& cfg, std::span<const PlanarPoint> area,
                                   const BuildingIndex& buildings, std::mt19937_64& rng);

/// A fixed station in planar coordinates with its receive antenna and noise.
struct FsSite {
    std::string pair_id;
    std::string link_id;
    PlanarPoint rx;
    PlanarPoint tx;
    double height_m = 0.0;
    FsAntenna antenna;
    double noise_power_dbm = 0.0;
};

struct SiteOptions {
    GeoPoint origin;
    std::shared_ptr<const FsPatternTable> pattern;
    double ftbr_db = 55.0;
    double noise_bandwidth_hz = 1e9;
    double noise_temperature_k = 290.0;
};

/// Throws ConfigError when a station cannot be projected about the origin.
FsSite make_site(const FixedStation& fs, const SiteOptions& opt);

struct LinkModel {
    PathLossConfig path_loss;
    UeAntenna ue_antenna;
};

struct LinkEvaluation {
    std::size_t ue_index = 0;
    std::size_t fs_index = 0;
    bool blocked = false;
    double path_loss_db = 0.0;
    double fs_gain_dbi = 0.0;
    double ue_radiated_dbm = 0.0;
    /// ue_radiated_dbm + fs_gain_dbi - path_loss_db.
    double interference_dbm = 0.0;
};

/// One UE-FS link: blockage, path loss, FS receive gain, UE radiated power.
/// `shadow_draw` is a standard normal variate scaled by the state's sigma.
/// Throws ModelError for links shorter than 1 m.
LinkEvaluation evaluate_link(const UserTerminal& ue, const FsSite& fs,
                             const BuildingIndex& buildings, const LinkModel& model,
                             double shadow_draw);

/// Power sum in dBm; -inf for an empty set.
double aggregate_dbm(std::span<const double> interference_dbm);

struct SimulationConfig {
    DropConfig drop;
    std::vector<PlanarPoint> area;
    LinkModel link;
    std::int64_t realizations = 1;
    std::uint64_t seed = 1;
    double inr_threshold_db = -6.0;
    /// Links longer than this are skipped; 0 disables culling.
    double cull_distance_m = 10'000.0;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 1;
};

SimulationConfig simulation_config(const Scenario& s, double eirp_max_dbm, double carrier_ghz);

struct InrSample {
    double aggregate_dbm = 0.0;
    double inr_db = 0.0;
};

struct InrReport {
    std::size_t fs_index = 0;
    std::string pair_id;
    std::string link_id;
    double noise_power_dbm = 0.0;
    /// One sample per realization, in realization order.
    std::vector<InrSample> samples;
    double mean_inr_db = 0.0;
    double median_inr_db = 0.0;
    double p95_inr_db = 0.0;
    std::size_t exceed_count = 0;
};

struct LinkCounters {
    std::uint64_t evaluated = 0;
    std::uint64_t blocked = 0;
    std::uint64_t culled = 0;
    /// Links under the 1 m model floor, skipped.
    std::uint64_t excluded = 0;
    /// Evaluated links beyond the UMi validity range.
    std::uint64_t beyond_model_range = 0;

    LinkCounters& operator+=(const LinkCounters& o);
};

struct SimulationResult {
    std::vector<InrReport> reports;
    LinkCounters counters;
};

/// Monte Carlo over realizations. Results are bit-identical for a given
/// configuration regardless of the thread count.
SimulationResult run(const SimulationConfig& cfg, std::span<const FsSite> sites,
                     const BuildingIndex& buildings);

/// Every (FS, realization) INR sample, FS-major.
std::vector<double> pooled_inr(const SimulationResult& r);

/// Mean INR of each FS over its realizations.
std::vector<double> per_fs_mean_inr(const SimulationResult& r);

} // namespace mmcoex
