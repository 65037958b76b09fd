// SPDX-License-Identifier: Apache-2.0
#include "mmcoex/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mmcoex/error.hpp"

namespace mmcoex {
namespace {

constexpr double kEnvironmentHeightM = 1.0;
constexpr double kMinEffectiveHeightM = 0.1;

double d3d(double d2d_m, double ue_height_m, double fs_height_m) {
    return std::hypot(d2d_m, fs_height_m - ue_height_m);
}

} // namespace

void validate(const PathLossConfig& cfg) {
    if (!(cfg.carrier_ghz >= 0.5 && cfg.carrier_ghz <= 100.0)) {
        throw ConfigError("carrier frequency must lie in [0.5, 100] GHz");
    }
    if (!(cfg.sigma_los_db >= 0.0) || !(cfg.sigma_nlos_db >= 0.0)) {
        throw ConfigError("shadow-fading sigmas must be non-negative");
    }
}

double umi_breakpoint_m(double carrier_ghz, double ue_height_m, double fs_height_m) {
    const double h_bs = std::max(fs_height_m - kEnvironmentHeightM, kMinEffectiveHeightM);
    const double h_ut = std::max(ue_height_m - kEnvironmentHeightM, kMinEffectiveHeightM);
    return 4.0 * h_bs * h_ut * carrier_ghz * 1e9 / kSpeedOfLight;
}

double umi_los_db(double carrier_ghz, double d2d_m, double ue_height_m, double fs_height_m) {
    const double d = d3d(d2d_m, ue_height_m, fs_height_m);
    const double freq_term = 20.0 * std::log10(carrier_ghz);
    const double d_bp = umi_breakpoint_m(carrier_ghz, ue_height_m, fs_height_m);
    if (d2d_m <= d_bp) {
        return 32.4 + 21.0 * std::log10(d) + freq_term;
    }
    const double dh = fs_height_m - ue_height_m;
    return 32.4 + 40.0 * std::log10(d) + freq_term - 9.5 * std::log10(d_bp * d_bp + dh * dh);
}

double umi_nlos_db(double carrier_ghz, double d2d_m, double ue_height_m, double fs_height_m) {
    const double d = d3d(d2d_m, ue_height_m, fs_height_m);
    const double nlos = 35.3 * std::log10(d) + 22.4 + 21.3 * std::log10(carrier_ghz) -
                        0.3 * (ue_height_m - 1.5);
    return std::max(umi_los_db(carrier_ghz, d2d_m, ue_height_m, fs_height_m), nlos);
}

double path_loss_db(const PathLossConfig& cfg, double d2d_m, double ue_height_m,
                    double fs_height_m, bool blocked, double shadow_draw) {
    if (!(d2d_m >= kMinLinkDistanceM)) {
        std::ostringstream os;
        os << "link distance " << d2d_m << " m is below the 1 m model floor";
        throw ModelError(os.str());
    }
    double pl = blocked ? umi_nlos_db(cfg.carrier_ghz, d2d_m, ue_height_m, fs_height_m)
                        : umi_los_db(cfg.carrier_ghz, d2d_m, ue_height_m, fs_height_m);
    if (cfg.shadowing_enabled) {
        pl += (blocked ? cfg.sigma_nlos_db : cfg.sigma_los_db) * shadow_draw;
    }
    return pl;
}

double noise_power_dbm(const NoiseConfig& cfg) {
    if (!(cfg.bandwidth_hz > 0.0) || !(cfg.temperature_k > 0.0)) {
        throw ConfigError("noise bandwidth and temperature must be positive");
    }
    return 10.0 * std::log10(kBoltzmann * cfg.temperature_k * 1000.0) +
           10.0 * std::log10(cfg.bandwidth_hz) + cfg.noise_figure_db;
}

} // namespace mmcoex
