// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace mmcoex {

inline constexpr double kBoltzmann = 1.380649e-23;   // J/K
inline constexpr double kSpeedOfLight = 3.0e8;       // m/s, as used by the UMi breakpoint
inline constexpr double kMinLinkDistanceM = 1.0;
/// Beyond this planar distance the UMi model is outside its validity range.
inline constexpr double kUmiMaxDistanceM = 5000.0;

struct PathLossConfig {
    double carrier_ghz = 73.5;
    double sigma_los_db = 4.0;
    double sigma_nlos_db = 7.82;
    bool shadowing_enabled = true;
};

/// Throws ConfigError for carriers outside [0.5, 100] GHz or negative sigmas.
void validate(const PathLossConfig& cfg);

/// UMi street-canyon LOS path loss in dB (dual slope with breakpoint on the
/// planar distance). No shadowing.
double umi_los_db(double carrier_ghz, double d2d_m, double ue_height_m, double fs_height_m);

/// UMi street-canyon NLOS path loss in dB, lower-bounded by the LOS value.
double umi_nlos_db(double carrier_ghz, double d2d_m, double ue_height_m, double fs_height_m);

/// Breakpoint distance 4 h'_BS h'_UT f_c / c, with effective heights h - 1
/// clamped to at least 0.1 m.
double umi_breakpoint_m(double carrier_ghz, double ue_height_m, double fs_height_m);

/// Composite path loss: LOS when `blocked` is false, NLOS otherwise, plus
/// sigma * shadow_draw when shadowing is enabled (sigma picked by state).
/// Throws ModelError when d2d_m < 1 m.
double path_loss_db(const PathLossConfig& cfg, double d2d_m, double ue_height_m,
                    double fs_height_m, bool blocked, double shadow_draw);

inline bool beyond_model_range(double d2d_m) { return d2d_m > kUmiMaxDistanceM; }

struct NoiseConfig {
    double bandwidth_hz = 1e9;
    double temperature_k = 290.0;
    double noise_figure_db = 0.0;
};

/// Thermal noise power 10 log10(k T B * 1000) + F, in dBm.
double noise_power_dbm(const NoiseConfig& cfg);

} // namespace mmcoex
