// SPDX-License-Identifier: Apache-2.0
#include "mmcoex/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "mmcoex/error.hpp"
#include "mmcoex/stats.hpp"

namespace mmcoex {

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t realization, RandomStream purpose) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(realization),
                      static_cast<std::uint32_t>(realization >> 32),
                      static_cast<std::uint32_t>(purpose)};
    return std::mt19937_64(seq);
}

std::vector<UserTerminal> drop_ues(const DropConfig& cfg, std::span<const PlanarPoint> area,
                                   const BuildingIndex& buildings, std::mt19937_64& rng) {
    std::vector<UserTerminal> out;
    if (cfg.ue_count <= 0) {
        return out;
    }
    if (area.size() < 3) {
        throw ConfigError("drop area needs at least 3 vertices");
    }
    const Box box = bounding_box(area);
    std::uniform_real_distribution<double> ux(box.min_x, box.max_x);
    std::uniform_real_distribution<double> uy(box.min_y, box.max_y);
    std::uniform_real_distribution<double> azimuth(0.0, 360.0);
    std::uniform_real_distribution<double> gnb_distance(cfg.gnb_distance_min_m,
                                                        cfg.gnb_distance_max_m);

    out.reserve(static_cast<std::size_t>(cfg.ue_count));
    std::uint64_t attempts = 0;
    constexpr std::uint64_t kMinAttemptsBeforeGiveUp = 10'000;
    while (out.size() < static_cast<std::size_t>(cfg.ue_count)) {
        ++attempts;
        const PlanarPoint p{ux(rng), uy(rng)};
        if (point_in_polygon(p, area) && !buildings.covers(p)) {
            UserTerminal ue;
            ue.pos = p;
            ue.height_m = cfg.ue_height_m;
            ue.beam_azimuth_deg = azimuth(rng);
            ue.beam_elevation_deg =
                rad_to_deg(std::atan((cfg.gnb_height_m - cfg.ue_height_m) / gnb_distance(rng)));
            out.push_back(ue);
            continue;
        }
        if (attempts >= kMinAttemptsBeforeGiveUp &&
            static_cast<double>(out.size()) < kMinDropAcceptance * static_cast<double>(attempts)) {
            throw ModelError("UE drop area is almost entirely covered by buildings "
                             "(rejection acceptance below 0.1%)");
        }
    }
    return out;
}

FsSite make_site(const FixedStation& fs, const SiteOptions& opt) {
    FsSite site;
    site.pair_id = fs.pair_id;
    site.link_id = fs.link_id;
    site.rx = project(fs.rx_pos, opt.origin);
    site.tx = project(fs.tx_pos, opt.origin);
    if (site.rx == site.tx) {
        throw ConfigError("malformed link " + fs.link_id + ": zero-length beam axis");
    }
    site.height_m = fs.rx_height_m;
    site.antenna = {fs.max_gain_dbi, fs.beamwidth_deg, fs.tilt_deg, opt.ftbr_db, opt.pattern};
    site.noise_power_dbm =
        noise_power_dbm({opt.noise_bandwidth_hz, opt.noise_temperature_k, fs.noise_figure_db});
    return site;
}

LinkEvaluation evaluate_link(const UserTerminal& ue, const FsSite& fs,
                             const BuildingIndex& buildings, const LinkModel& model,
                             double shadow_draw) {
    const double d2d = distance(ue.pos, fs.rx);
    LinkEvaluation e;
    e.blocked = is_blocked({ue.pos, ue.height_m, fs.rx, fs.height_m}, buildings).blocked;
    e.path_loss_db =
        path_loss_db(model.path_loss, d2d, ue.height_m, fs.height_m, e.blocked, shadow_draw);

    const OffAxisAngles fs_off =
        fs_off_axis(fs.tx, fs.rx, fs.height_m, fs.antenna.tilt_deg, ue.pos, ue.height_m);
    e.fs_gain_dbi = fs_gain_dbi(fs.antenna, fs_off);

    const double az_to_fs = bearing_deg(ue.pos, fs.rx);
    const double el_to_fs = rad_to_deg(std::atan((fs.height_m - ue.height_m) / d2d));
    const OffAxisAngles ue_off =
        ue_off_axis(ue.beam_azimuth_deg, ue.beam_elevation_deg, az_to_fs, el_to_fs);
    e.ue_radiated_dbm = ue_radiated_dbm(model.ue_antenna, ue_off);

    e.interference_dbm = e.ue_radiated_dbm + e.fs_gain_dbi - e.path_loss_db;
    return e;
}

double aggregate_dbm(std::span<const double> interference_dbm) {
    if (interference_dbm.empty()) {
        return -std::numeric_limits<double>::infinity();
    }
    const double peak = *std::max_element(interference_dbm.begin(), interference_dbm.end());
    if (std::isinf(peak)) {
        return peak;
    }
    double sum = 0.0;
    for (double i : interference_dbm) {
        sum += std::pow(10.0, (i - peak) / 10.0);
    }
    return peak + 10.0 * std::log10(sum);
}

SimulationConfig simulation_config(const Scenario& s, double eirp_max_dbm, double carrier_ghz) {
    SimulationConfig cfg;
    cfg.drop = {s.ue_count, s.ue_height_m, s.gnb_height_m, s.gnb_distance_min_m,
                s.gnb_distance_max_m};
    cfg.area = planar_area(s);
    cfg.link.path_loss = {carrier_ghz, s.sigma_los_db, s.sigma_nlos_db, s.shadowing};
    cfg.link.ue_antenna = {eirp_max_dbm, s.ue_beam_3db_deg, s.ue_element_3db_deg, s.ue_ftbr_db,
                           s.ue_beam_cap};
    cfg.realizations = s.realizations;
    cfg.seed = s.seed;
    cfg.inr_threshold_db = s.inr_threshold_db;
    cfg.cull_distance_m = s.cull_distance_m;
    return cfg;
}

LinkCounters& LinkCounters::operator+=(const LinkCounters& o) {
    evaluated += o.evaluated;
    blocked += o.blocked;
    culled += o.culled;
    excluded += o.excluded;
    beyond_model_range += o.beyond_model_range;
    return *this;
}

namespace {

struct RealizationOutcome {
    std::vector<double> aggregate_dbm;  // per site
    LinkCounters counters;
};

RealizationOutcome run_realization(const SimulationConfig& cfg, std::span<const FsSite> sites,
                                   const BuildingIndex& buildings, std::uint64_t realization) {
    auto drop_rng = substream(cfg.seed, realization, RandomStream::UeDrop);
    auto shadow_rng = substream(cfg.seed, realization, RandomStream::Shadowing);
    std::normal_distribution<double> normal(0.0, 1.0);

    const auto ues = drop_ues(cfg.drop, cfg.area, buildings, drop_rng);

    RealizationOutcome out;
    std::vector<std::vector<double>> per_site(sites.size());
    for (auto& v : per_site) {
        v.reserve(ues.size());
    }
    for (std::size_t u = 0; u < ues.size(); ++u) {
        for (std::size_t f = 0; f < sites.size(); ++f) {
            // Drawn for every pair so the stream position depends only on
            // (UE, FS) order, not on culling or blockage.
            const double z = cfg.link.path_loss.shadowing_enabled ? normal(shadow_rng) : 0.0;
            const double d2d = distance(ues[u].pos, sites[f].rx);
            if (d2d < kMinLinkDistanceM) {
                ++out.counters.excluded;
                continue;
            }
            if (cfg.cull_distance_m > 0.0 && d2d > cfg.cull_distance_m) {
                ++out.counters.culled;
                continue;
            }
            const auto e = evaluate_link(ues[u], sites[f], buildings, cfg.link, z);
            ++out.counters.evaluated;
            out.counters.blocked += e.blocked ? 1 : 0;
            out.counters.beyond_model_range += beyond_model_range(d2d) ? 1 : 0;
            per_site[f].push_back(e.interference_dbm);
        }
    }
    out.aggregate_dbm.reserve(sites.size());
    for (const auto& v : per_site) {
        out.aggregate_dbm.push_back(aggregate_dbm(v));
    }
    return out;
}

} // namespace

SimulationResult run(const SimulationConfig& cfg, std::span<const FsSite> sites,
                     const BuildingIndex& buildings) {
    if (cfg.realizations < 1) {
        throw ConfigError("realizations must be at least 1");
    }
    validate(cfg.link.path_loss);
    const auto n_real = static_cast<std::size_t>(cfg.realizations);
    std::vector<RealizationOutcome> outcomes(n_real);

    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                        : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_real));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t r = next++; r < n_real; r = next++) {
            try {
                outcomes[r] = run_realization(cfg, sites, buildings, r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n_real;
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    SimulationResult result;
    result.reports.reserve(sites.size());
    for (std::size_t f = 0; f < sites.size(); ++f) {
        InrReport rep;
        rep.fs_index = f;
        rep.pair_id = sites[f].pair_id;
        rep.link_id = sites[f].link_id;
        rep.noise_power_dbm = sites[f].noise_power_dbm;
        rep.samples.reserve(n_real);
        std::vector<double> inr;
        inr.reserve(n_real);
        for (const auto& o : outcomes) {
            const double agg = o.aggregate_dbm[f];
            rep.samples.push_back({agg, agg - rep.noise_power_dbm});
            inr.push_back(agg - rep.noise_power_dbm);
            rep.exceed_count += (agg - rep.noise_power_dbm > cfg.inr_threshold_db) ? 1 : 0;
        }
        const stats::EmpiricalDistribution d(std::move(inr));
        rep.mean_inr_db = stats::mean(d);
        rep.median_inr_db = stats::percentile(d, 50.0);
        rep.p95_inr_db = stats::percentile(d, 95.0);
        result.reports.push_back(std::move(rep));
    }
    for (const auto& o : outcomes) {
        result.counters += o.counters;
    }
    return result;
}

std::vector<double> pooled_inr(const SimulationResult& r) {
    std::vector<double> out;
    for (const auto& rep : r.reports) {
        for (const auto& s : rep.samples) {
            out.push_back(s.inr_db);
        }
    }
    return out;
}

std::vector<double> per_fs_mean_inr(const SimulationResult& r) {
    std::vector<double> out;
    out.reserve(r.reports.size());
    for (const auto& rep : r.reports) {
        out.push_back(rep.mean_inr_db);
    }
    return out;
}

} // namespace mmcoex
