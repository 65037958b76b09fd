// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mmcoex::stats {

/// Sorted sample set. Accepts -inf ("no interference") but rejects NaN and
/// +inf.
class EmpiricalDistribution {
public:
    /// Throws ConfigError on an empty input or a NaN / +inf sample.
    explicit EmpiricalDistribution(std::vector<double> samples);

    const std::vector<double>& sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }
    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }

private:
    std::vector<double> sorted_;
};

/// Fraction of samples <= x.
double cdf_at(const EmpiricalDistribution& d, double x);

/// Linear-interpolation quantile at rank (n - 1) p / 100, p in [0, 100].
double percentile(const EmpiricalDistribution& d, double p);
/// Same on an already sorted span.
double percentile_sorted(std::span<const double> sorted, double p);

/// Fraction of samples strictly above the threshold.
double exceedance(const EmpiricalDistribution& d, double threshold);

/// Arithmetic mean; -inf if any sample is -inf.
double mean(const EmpiricalDistribution& d);

/// Fixed-width histogram with bin edges on integer multiples of the width,
/// covering [floor(min / w) w, (floor(max / w) + 1) w).
struct Histogram {
    std::vector<double> edges;
    std::vector<std::size_t> counts;
    double bin_width = 0.0;
};

/// Bins finite values; non-finite ones are ignored. Empty input yields an
/// empty histogram. Throws ConfigError for a non-positive width.
Histogram histogram(std::span<const double> values, double bin_width);

struct PdfBins {
    std::vector<double> edges;
    std::vector<double> density;
    /// Samples left out of the density (-inf).
    std::size_t excluded = 0;
};

/// Histogram normalized so sum(density * width) = 1 over the finite samples.
PdfBins pdf_histogram(const EmpiricalDistribution& d, double bin_width);

struct CdfPoint {
    double value = 0.0;
    double probability = 0.0;
};

/// Right-continuous empirical CDF steps: one point per distinct value.
std::vector<CdfPoint> cdf_points(const EmpiricalDistribution& d);

struct Summary {
    double mean = 0.0;
    double median = 0.0;
    double p5 = 0.0;
    double p95 = 0.0;
    std::size_t n = 0;
};

Summary summarize(const EmpiricalDistribution& d);

std::string cdf_csv(const EmpiricalDistribution& d, const std::string& value_column);
std::string pdf_csv(const PdfBins& bins, const std::string& value_column);

} // namespace mmcoex::stats
