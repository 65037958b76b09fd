// SPDX-License-Identifier: Apache-2.0
#include "generate.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <boost/math/distributions/normal.hpp>

#include "mmcoex/error.hpp"

namespace mmcoex::gen {
namespace {

std::string id(const char* prefix, std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%06zu", prefix, n);
    return buf;
}

double draw_tilt(const RegistryParams& p, std::mt19937_64& rng) {
    if (p.tilt_sigma_deg <= 0.0) {
        return 0.0;
    }
    return std::normal_distribution<double>(0.0, p.tilt_sigma_deg)(rng);
}

double draw_height(const RegistryParams& p, double tilt, std::mt19937_64& rng) {
    const double base = p.height_log_sigma > 0.0
                            ? std::lognormal_distribution<double>(std::log(p.height_median_m),
                                                                  p.height_log_sigma)(rng)
                            : p.height_median_m;
    return std::max(1.0, base - p.tilt_height_slope_m_per_deg * tilt);
}

double draw_beamwidth(const RegistryParams& p, std::mt19937_64& rng) {
    std::vector<double> weights;
    for (const auto& [bw, w] : p.beamwidths) {
        weights.push_back(w);
    }
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    return p.beamwidths[pick(rng)].first;
}

double draw_center_freq(std::mt19937_64& rng) {
    // 1 GHz channels on a 125 MHz raster inside either band.
    const bool upper = std::bernoulli_distribution(0.5)(rng);
    const int step = std::uniform_int_distribution<int>(0, 32)(rng);
    return (upper ? 81.5 : 71.5) + 0.125 * step;
}

void check(const RegistryParams& p) {
    if (p.beamwidths.empty()) {
        throw ConfigError("generator needs at least one beamwidth choice");
    }
    for (const auto& [bw, w] : p.beamwidths) {
        if (!(bw > 0.0 && bw <= 1.2) || !(w >= 0.0)) {
            throw ConfigError("generator beamwidths must lie in (0, 1.2] with non-negative weights");
        }
    }
    if (!(p.height_median_m > 0.0) || p.height_log_sigma < 0.0) {
        throw ConfigError("generator height law needs a positive median and non-negative sigma");
    }
    if (p.max_links_per_pair < 1) {
        throw ConfigError("generator needs at least one link per pair");
    }
    if (!(p.link_length_min_m > 0.0 && p.link_length_max_m >= p.link_length_min_m)) {
        throw ConfigError("generator link lengths need 0 < min <= max");
    }
    if (!(p.gain_max_dbi >= p.gain_min_dbi)) {
        throw ConfigError("generator gain range is empty");
    }
}

FixedStation station_at(const PlanarPoint& rx, const GeoPoint& origin, double height, double tilt,
                        const RegistryParams& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> bearing(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> length(p.link_length_min_m, p.link_length_max_m);
    std::uniform_real_distribution<double> gain(p.gain_min_dbi, p.gain_max_dbi);
    const double b = bearing(rng);
    const double l = length(rng);
    FixedStation fs;
    fs.rx_pos = unproject(rx, origin);
    fs.tx_pos = unproject({rx.x + l * std::cos(b), rx.y + l * std::sin(b)}, origin);
    fs.rx_height_m = height;
    fs.tilt_deg = tilt;
    fs.max_gain_dbi = gain(rng);
    fs.beamwidth_deg = draw_beamwidth(p, rng);
    fs.noise_figure_db = p.noise_figure_db;
    fs.bandwidth_mhz = 1000.0;
    return fs;
}

} // namespace

std::vector<FixedStation> generate_registry(const RegistryParams& p, std::uint64_t seed) {
    check(p);
    std::mt19937_64 rng(seed);
    const double spread_m = p.spread_km * 1000.0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, spread_m / 2.0);
    std::uniform_int_distribution<std::size_t> links(1, p.max_links_per_pair);

    std::vector<FixedStation> out;
    out.reserve(p.stations);
    std::size_t pair_no = 0;
    while (out.size() < p.stations) {
        ++pair_no;
        PlanarPoint rx;
        if (p.spatial == Spatial::Uniform) {
            const double r = spread_m * std::sqrt(unit(rng));
            const double a = 2.0 * std::numbers::pi * unit(rng);
            rx = {r * std::cos(a), r * std::sin(a)};
        } else {
            rx = {gauss(rng), gauss(rng)};
        }
        const double tilt = draw_tilt(p, rng);
        const double height = draw_height(p, tilt, rng);
        FixedStation base = station_at(rx, p.center, height, tilt, p, rng);
        base.pair_id = id("P", pair_no);
        const std::size_t k = std::min(links(rng), p.stations - out.size());
        for (std::size_t l = 1; l <= k; ++l) {
            FixedStation fs = base;
            fs.link_id = base.pair_id + "-L" + std::to_string(l);
            fs.center_freq_ghz = draw_center_freq(rng);
            out.push_back(std::move(fs));
        }
    }
    return out;
}

double registry_height_quantile(const RegistryParams& p, double probability) {
    const boost::math::normal_distribution<double> std_normal(0.0, 1.0);
    return p.height_median_m *
           std::exp(p.height_log_sigma * boost::math::quantile(std_normal, probability));
}

double registry_tilt_probability(const RegistryParams& p, double lo_deg, double hi_deg) {
    if (p.tilt_sigma_deg <= 0.0) {
        return (lo_deg <= 0.0 && hi_deg >= 0.0) ? 1.0 : 0.0;
    }
    const boost::math::normal_distribution<double> tilt(0.0, p.tilt_sigma_deg);
    return boost::math::cdf(tilt, hi_deg) - boost::math::cdf(tilt, lo_deg);
}

Box grid_extent(const GridParams& p) {
    const double pitch = p.block_size_m + p.street_width_m;
    const double w = pitch * p.blocks_x;
    const double h = pitch * p.blocks_y;
    return {-w / 2.0, -h / 2.0, w / 2.0, h / 2.0};
}

std::vector<Footprint> generate_grid(const GridParams& p, std::uint64_t seed) {
    if (p.blocks_x < 1 || p.blocks_y < 1 || !(p.block_size_m > 0.0) || p.street_width_m < 0.0) {
        throw ConfigError("grid needs at least one block, a positive block size and a "
                          "non-negative street width");
    }
    if (!(p.height_min_m > 0.0 && p.height_max_m >= p.height_min_m)) {
        throw ConfigError("grid building heights need 0 < min <= max");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> height(p.height_min_m, p.height_max_m);
    const Box ext = grid_extent(p);
    const double pitch = p.block_size_m + p.street_width_m;
    std::vector<Footprint> out;
    out.reserve(static_cast<std::size_t>(p.blocks_x) * static_cast<std::size_t>(p.blocks_y));
    for (int j = 0; j < p.blocks_y; ++j) {
        for (int i = 0; i < p.blocks_x; ++i) {
            const double x0 = ext.min_x + i * pitch + p.street_width_m / 2.0;
            const double y0 = ext.min_y + j * pitch + p.street_width_m / 2.0;
            const double x1 = x0 + p.block_size_m;
            const double y1 = y0 + p.block_size_m;
            out.emplace_back(std::vector<PlanarPoint>{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}},
                             height(rng));
        }
    }
    return out;
}

Scenario grid_scenario(const GridParams& p, std::int64_t ue_count, std::int64_t realizations,
                       std::uint64_t seed) {
    Scenario s;
    s.name = "manhattan_grid";
    s.origin = p.origin;
    const Box ext = grid_extent(p);
    s.area_polygon = {unproject({ext.min_x, ext.min_y}, p.origin),
                      unproject({ext.max_x, ext.min_y}, p.origin),
                      unproject({ext.max_x, ext.max_y}, p.origin),
                      unproject({ext.min_x, ext.max_y}, p.origin)};
    s.ue_count = ue_count;
    s.realizations = realizations;
    s.seed = seed;
    validate(s);
    return s;
}

std::vector<FixedStation> generate_rooftop_registry(const RegistryParams& p,
                                                    const GridParams& grid,
                                                    const std::vector<Footprint>& buildings,
                                                    std::uint64_t seed) {
    check(p);
    if (buildings.empty()) {
        throw ConfigError("rooftop registry needs at least one building");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, buildings.size() - 1);
    std::vector<FixedStation> out;
    out.reserve(p.stations);
    for (std::size_t n = 1; n <= p.stations; ++n) {
        const Footprint& b = buildings[pick(rng)];
        const PlanarPoint rx{(b.bounds().min_x + b.bounds().max_x) / 2.0,
                             (b.bounds().min_y + b.bounds().max_y) / 2.0};
        const double tilt = draw_tilt(p, rng);
        const double height = std::max(draw_height(p, tilt, rng), b.height_m() + 2.0);
        FixedStation fs = station_at(rx, grid.origin, height, tilt, p, rng);
        fs.pair_id = id("P", n);
        fs.link_id = fs.pair_id + "-L1";
        fs.center_freq_ghz = draw_center_freq(rng);
        out.push_back(std::move(fs));
    }
    return out;
}

} // namespace mmcoex::gen
