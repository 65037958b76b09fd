// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmcoex/geo.hpp"
#include "mmcoex/ingest.hpp"
#include "mmcoex/stats.hpp"

namespace mmcoex::analytics {

/// Great-circle (haversine) distance on the mean-radius sphere, in meters.
double great_circle_m(const GeoPoint& a, const GeoPoint& b);

struct RadialDensitySeries {
    std::vector<double> radii_km;
    std::vector<std::size_t> pair_counts;
    std::vector<double> density_per_km2;
};

/// Unique pairs (unordered endpoint couples) whose receiver lies within each
/// radius of `center`, divided by the disc area. A pair counts once even when
/// several of its links are listed. Throws ConfigError for an empty station
/// list or radii that are not positive and strictly increasing.
RadialDensitySeries density_vs_radius(const std::vector<FixedStation>& stations,
                                      const GeoPoint& center, const std::vector<double>& radii_km);

struct DistributionSummary {
    double mean = 0.0;
    double median = 0.0;
    double p5 = 0.0;
    double p95 = 0.0;
    std::size_t n = 0;
    stats::Histogram histogram;
    std::vector<stats::CdfPoint> cdf;
};

inline constexpr double kDefaultHeightBinM = 5.0;
inline constexpr double kDefaultTiltBinDeg = 1.0;
inline constexpr double kDefaultBeamwidthBinDeg = 0.1;

DistributionSummary summarize(std::vector<double> values, double bin_width);

DistributionSummary height_distribution(const std::vector<FixedStation>& stations,
                                        double bin_m = kDefaultHeightBinM);
DistributionSummary tilt_histogram(const std::vector<FixedStation>& stations,
                                   double bin_deg = kDefaultTiltBinDeg);
DistributionSummary beamwidth_histogram(const std::vector<FixedStation>& stations,
                                        double bin_deg = kDefaultBeamwidthBinDeg);

/// Fraction of stations whose tilt lies in [lo_deg, hi_deg].
double tilt_fraction_within(const std::vector<FixedStation>& stations, double lo_deg,
                            double hi_deg);

struct TiltHeightBin {
    double tilt_lo_deg = 0.0;
    double tilt_hi_deg = 0.0;
    std::size_t count = 0;
    double mean_height_m = 0.0;
};

/// Mean receiver height per tilt bin. Only occupied bins are listed.
std::vector<TiltHeightBin> tilt_height_profile(const std::vector<FixedStation>& stations,
                                               double bin_deg = kDefaultTiltBinDeg);

std::string density_csv(const RadialDensitySeries& s);
/// Histogram table with a cumulative-fraction column, preceded by a `#`
/// comment line carrying n, mean, median, p5 and p95.
std::string histogram_csv(const DistributionSummary& d, const std::string& value_column);
std::string tilt_height_csv(const std::vector<TiltHeightBin>& bins);

} // namespace mmcoex::analytics
