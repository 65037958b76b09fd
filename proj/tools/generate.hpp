// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mmcoex/geo.hpp"
#include "mmcoex/ingest.hpp"

namespace mmcoex::gen {

enum class Spatial { Uniform, Gaussian };

/// Synthetic FS registry. Heights are log-normal (median, log-sigma) minus
/// `tilt_height_slope_m_per_deg * tilt`, floored at 1 m; tilts are
/// N(0, tilt_sigma_deg); beamwidths are drawn from a weighted set.
struct RegistryParams {
    GeoPoint center{-87.6359, 41.8789};
    std::size_t stations = 1000;
    Spatial spatial = Spatial::Gaussian;
    /// Disc radius (uniform) or 2-sigma radius (gaussian).
    double spread_km = 10.0;
    std::size_t max_links_per_pair = 1;
    double height_median_m = 24.0;
    double height_log_sigma = 0.4;
    double tilt_sigma_deg = 5.5;
    double tilt_height_slope_m_per_deg = 0.0;
    std::vector<std::pair<double, double>> beamwidths{{0.8, 0.1}, {1.0, 0.8}, {1.2, 0.1}};
    double gain_min_dbi = 43.0;
    double gain_max_dbi = 50.0;
    double noise_figure_db = 5.0;
    double link_length_min_m = 500.0;
    double link_length_max_m = 3000.0;
};

std::vector<FixedStation> generate_registry(const RegistryParams& p, std::uint64_t seed);

/// Closed-form height quantile of the generator when the tilt slope is 0.
double registry_height_quantile(const RegistryParams& p, double probability);

/// Closed-form probability that a generated tilt lies in [lo, hi].
double registry_tilt_probability(const RegistryParams& p, double lo_deg, double hi_deg);

/// Manhattan grid of rectangular blocks, one building per block, heights
/// U(height_min_m, height_max_m). The grid is centred on `origin`.
struct GridParams {
    GeoPoint origin{-87.6359, 41.8789};
    int blocks_x = 10;
    int blocks_y = 10;
    double block_size_m = 80.0;
    double street_width_m = 20.0;
    double height_min_m = 10.0;
    double height_max_m = 60.0;
};

std::vector<Footprint> generate_grid(const GridParams& p, std::uint64_t seed);

/// Planar extent of the grid including the outer half-streets.
Box grid_extent(const GridParams& p);

/// Scenario whose origin and area match the grid.
Scenario grid_scenario(const GridParams& p, std::int64_t ue_count, std::int64_t realizations,
                       std::uint64_t seed);

/// FSs mounted on rooftops of grid buildings. Each receiver sits at a
/// building centre with height max(drawn height, roof + 2 m).
std::vector<FixedStation> generate_rooftop_registry(const RegistryParams& p,
                                                    const GridParams& grid,
                                                    const std::vector<Footprint>& buildings,
                                                    std::uint64_t seed);

} // namespace mmcoex::gen
