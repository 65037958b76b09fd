// SPDX-License-Identifier: Apache-2.0
#include "mmcoex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmcoex/csv.hpp"
#include "mmcoex/error.hpp"

namespace mmcoex::stats {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : sorted_(std::move(samples)) {
    if (sorted_.empty()) {
        throw ConfigError("empirical distribution needs at least one sample");
    }
    for (double v : sorted_) {
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
            throw ConfigError("empirical distribution sample is NaN or +inf");
        }
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double cdf_at(const EmpiricalDistribution& d, double x) {
    const auto& s = d.sorted();
    const auto it = std::upper_bound(s.begin(), s.end(), x);
    return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
}

double percentile_sorted(std::span<const double> s, double p) {
    if (s.empty()) {
        throw ConfigError("percentile of an empty sample");
    }
    if (!(p >= 0.0 && p <= 100.0)) {
        throw ConfigError("percentile must lie in [0, 100]");
    }
    const double rank = (static_cast<double>(s.size()) - 1.0) * p / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const double frac = rank - static_cast<double>(lo);
    if (frac == 0.0 || lo + 1 >= s.size()) {
        return s[lo];
    }
    const double a = s[lo];
    const double b = s[lo + 1];
    if (std::isinf(a)) {
        return a;
    }
    return a + frac * (b - a);
}

double percentile(const EmpiricalDistribution& d, double p) {
    return percentile_sorted(d.sorted(), p);
}

double exceedance(const EmpiricalDistribution& d, double threshold) {
    return 1.0 - cdf_at(d, threshold);
}

double mean(const EmpiricalDistribution& d) {
    double sum = 0.0;
    for (double v : d.sorted()) {
        sum += v;
    }
    return sum / static_cast<double>(d.size());
}

Histogram histogram(std::span<const double> values, double bin_width) {
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw ConfigError("histogram bin width must be positive");
    }
    // Guard against x / w landing a hair below an integer (1.2 / 0.1).
    const auto bin_of = [bin_width](double x) {
        return static_cast<long long>(std::floor(x / bin_width + 1e-9));
    };
    long long lo = std::numeric_limits<long long>::max();
    long long hi = std::numeric_limits<long long>::min();
    for (double v : values) {
        if (std::isfinite(v)) {
            lo = std::min(lo, bin_of(v));
            hi = std::max(hi, bin_of(v));
        }
    }
    Histogram h;
    h.bin_width = bin_width;
    if (lo > hi) {
        return h;
    }
    const auto nbins = static_cast<std::size_t>(hi - lo + 1);
    h.counts.assign(nbins, 0);
    h.edges.reserve(nbins + 1);
    for (std::size_t i = 0; i <= nbins; ++i) {
        h.edges.push_back(static_cast<double>(lo + static_cast<long long>(i)) * bin_width);
    }
    for (double v : values) {
        if (std::isfinite(v)) {
            ++h.counts[static_cast<std::size_t>(bin_of(v) - lo)];
        }
    }
    return h;
}

PdfBins pdf_histogram(const EmpiricalDistribution& d, double bin_width) {
    const Histogram h = histogram(d.sorted(), bin_width);
    PdfBins out;
    out.edges = h.edges;
    std::size_t finite = 0;
    for (auto c : h.counts) {
        finite += c;
    }
    out.excluded = d.size() - finite;
    out.density.reserve(h.counts.size());
    for (auto c : h.counts) {
        out.density.push_back(finite == 0 ? 0.0
                                          : static_cast<double>(c) /
                                                (static_cast<double>(finite) * bin_width));
    }
    return out;
}

std::vector<CdfPoint> cdf_points(const EmpiricalDistribution& d) {
    std::vector<CdfPoint> out;
    const auto& s = d.sorted();
    const double n = static_cast<double>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i + 1 < s.size() && s[i + 1] == s[i]) {
            continue;
        }
        out.push_back({s[i], static_cast<double>(i + 1) / n});
    }
    return out;
}

Summary summarize(const EmpiricalDistribution& d) {
    return {mean(d), percentile(d, 50.0), percentile(d, 5.0), percentile(d, 95.0), d.size()};
}

std::string cdf_csv(const EmpiricalDistribution& d, const std::string& value_column) {
    std::string out = value_column + ",cdf\n";
    for (const auto& p : cdf_points(d)) {
        out += csv::format_double(p.value) + ',' + csv::format_double(p.probability) + '\n';
    }
    return out;
}

std::string pdf_csv(const PdfBins& bins, const std::string& value_column) {
    std::string out = value_column + "_lo," + value_column + "_hi,density\n";
    for (std::size_t i = 0; i < bins.density.size(); ++i) {
        out += csv::format_double(bins.edges[i]) + ',' + csv::format_double(bins.edges[i + 1]) +
               ',' + csv::format_double(bins.density[i]) + '\n';
    }
    return out;
}

} // namespace mmcoex::stats
