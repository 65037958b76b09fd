// SPDX-License-Identifier: Apache-2.0
#include "mmcoex/fs_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "mmcoex/csv.hpp"
#include "mmcoex/error.hpp"

namespace mmcoex::analytics {

double great_circle_m(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = deg_to_rad(a.latitude);
    const double phi2 = deg_to_rad(b.latitude);
    const double dphi = phi2 - phi1;
    const double dlambda = deg_to_rad(b.longitude - a.longitude);
    const double h = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

RadialDensitySeries density_vs_radius(const std::vector<FixedStation>& stations,
                                      const GeoPoint& center, const std::vector<double>& radii_km) {
    if (stations.empty()) {
        throw ConfigError("density analysis needs at least one station");
    }
    if (radii_km.empty()) {
        throw ConfigError("density analysis needs at least one radius");
    }
    for (std::size_t i = 0; i < radii_km.size(); ++i) {
        if (!(radii_km[i] > 0.0) || (i > 0 && !(radii_km[i] > radii_km[i - 1]))) {
            throw ConfigError("radii must be positive and strictly increasing");
        }
    }

    // Pair key: endpoints ordered so both directions of a link coincide.
    using Endpoint = std::pair<double, double>;
    std::map<std::pair<Endpoint, Endpoint>, double> nearest_rx_km;
    for (const auto& s : stations) {
        Endpoint rx{s.rx_pos.longitude, s.rx_pos.latitude};
        Endpoint tx{s.tx_pos.longitude, s.tx_pos.latitude};
        const auto key = rx < tx ? std::pair{rx, tx} : std::pair{tx, rx};
        const double d_km = great_circle_m(center, s.rx_pos) / 1000.0;
        auto [it, inserted] = nearest_rx_km.emplace(key, d_km);
        if (!inserted) {
            it->second = std::min(it->second, d_km);
        }
    }

    RadialDensitySeries out;
    out.radii_km = radii_km;
    for (double r : radii_km) {
        std::size_t count = 0;
        for (const auto& [key, d] : nearest_rx_km) {
            if (d <= r) {
                ++count;
            }
        }
        out.pair_counts.push_back(count);
        out.density_per_km2.push_back(static_cast<double>(count) / (std::numbers::pi * r * r));
    }
    return out;
}

DistributionSummary summarize(std::vector<double> values, double bin_width) {
    if (values.empty()) {
        throw ConfigError("distribution summary needs at least one value");
    }
    const stats::EmpiricalDistribution d(std::move(values));
    const auto s = stats::summarize(d);
    return {s.mean, s.median, s.p5, s.p95, s.n, stats::histogram(d.sorted(), bin_width),
            stats::cdf_points(d)};
}

namespace {

template <typename Field>
std::vector<double> collect(const std::vector<FixedStation>& stations, Field field) {
    std::vector<double> v;
    v.reserve(stations.size());
    for (const auto& s : stations) {
        v.push_back(s.*field);
    }
    return v;
}

} // namespace

DistributionSummary height_distribution(const std::vector<FixedStation>& stations, double bin_m) {
    return summarize(collect(stations, &FixedStation::rx_height_m), bin_m);
}

DistributionSummary tilt_histogram(const std::vector<FixedStation>& stations, double bin_deg) {
    return summarize(collect(stations, &FixedStation::tilt_deg), bin_deg);
}

DistributionSummary beamwidth_histogram(const std::vector<FixedStation>& stations,
                                        double bin_deg) {
    return summarize(collect(stations, &FixedStation::beamwidth_deg), bin_deg);
}

double tilt_fraction_within(const std::vector<FixedStation>& stations, double lo_deg,
                            double hi_deg) {
    if (stations.empty()) {
        throw ConfigError("tilt fraction needs at least one station");
    }
    const auto n = std::count_if(stations.begin(), stations.end(), [&](const FixedStation& s) {
        return s.tilt_deg >= lo_deg && s.tilt_deg <= hi_deg;
    });
    return static_cast<double>(n) / static_cast<double>(stations.size());
}

std::vector<TiltHeightBin> tilt_height_profile(const std::vector<FixedStation>& stations,
                                               double bin_deg) {
    if (!(bin_deg > 0.0)) {
        throw ConfigError("tilt bin width must be positive");
    }
    std::map<long long, std::pair<std::size_t, double>> acc;
    for (const auto& s : stations) {
        const auto bin = static_cast<long long>(std::floor(s.tilt_deg / bin_deg + 1e-9));
        auto& [count, sum] = acc[bin];
        ++count;
        sum += s.rx_height_m;
    }
    std::vector<TiltHeightBin> out;
    out.reserve(acc.size());
    for (const auto& [bin, cs] : acc) {
        const double lo = static_cast<double>(bin) * bin_deg;
        out.push_back({lo, lo + bin_deg, cs.first, cs.second / static_cast<double>(cs.first)});
    }
    return out;
}

std::string density_csv(const RadialDensitySeries& s) {
    std::string out = "radius_km,pairs,density_per_km2\n";
    for (std::size_t i = 0; i < s.radii_km.size(); ++i) {
        out += csv::format_double(s.radii_km[i]) + ',' + std::to_string(s.pair_counts[i]) + ',' +
               csv::format_double(s.density_per_km2[i]) + '\n';
    }
    return out;
}

std::string histogram_csv(const DistributionSummary& d, const std::string& value_column) {
    std::string out = "# n=" + std::to_string(d.n) + " mean=" + csv::format_double(d.mean) +
                      " median=" + csv::format_double(d.median) + " p5=" +
                      csv::format_double(d.p5) + " p95=" + csv::format_double(d.p95) + "\n";
    out += value_column + "_lo," + value_column + "_hi,count,cdf\n";
    std::size_t cum = 0;
    for (std::size_t i = 0; i < d.histogram.counts.size(); ++i) {
        cum += d.histogram.counts[i];
        out += csv::format_double(d.histogram.edges[i]) + ',' +
               csv::format_double(d.histogram.edges[i + 1]) + ',' +
               std::to_string(d.histogram.counts[i]) + ',' +
               csv::format_double(static_cast<double>(cum) / static_cast<double>(d.n)) + '\n';
    }
    return out;
}

std::string tilt_height_csv(const std::vector<TiltHeightBin>& bins) {
    std::string out = "tilt_lo_deg,tilt_hi_deg,count,mean_height_m\n";
    for (const auto& b : bins) {
        out += csv::format_double(b.tilt_lo_deg) + ',' + csv::format_double(b.tilt_hi_deg) + ',' +
               std::to_string(b.count) + ',' + csv::format_double(b.mean_height_m) + '\n';
    }
    return out;
}

} // namespace mmcoex::analytics
