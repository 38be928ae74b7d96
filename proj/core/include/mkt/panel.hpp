#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mkt {

/// Company-by-period revenue matrix; the universal input of the pipeline.
/// Periods are consecutive calendar years, values are million USD.
struct RevenuePanel {
    std::vector<std::string> companies;
    std::vector<int> periods;
    std::vector<std::vector<double>> values;  // companies x periods

    std::size_t company_count() const { return companies.size(); }
    std::size_t period_count() const { return periods.size(); }

    /// Shape and invariant check; throws InputError on violation.
    /// Accepts single-company panels so derived views stay usable; the CSV
    /// loader additionally requires at least 2 companies and 2 periods.
    void validate() const;

    /// Index of a year in periods; throws InputError if absent.
    std::size_t period_index(int year) const;
};

/// Per-company z-scores together with the moments that produced them.
/// Rows appended by augment() carry labels of the form "<company>#k" and
/// inherit the source row's mu and sigma.
struct NormalizedPanel {
    std::vector<std::string> labels;
    std::vector<int> periods;
    std::vector<std::vector<double>> z;
    std::vector<double> mu;     // per row, currency units
    std::vector<double> sigma;  // per row, > 0
    std::size_t base_count = 0;

    std::size_t row_count() const { return labels.size(); }
    std::size_t period_count() const { return periods.size(); }
    void validate() const;
};

/// Additive Gaussian noise configuration for augment().
struct NoiseSpec {
    double delta = 0.05;        // stddev of the noise on z-scores
    std::uint64_t seed = 0;
    std::size_t replicas = 10;  // noisy copies appended per row
};

/// Period-over-period fractional growth of one series (T-1 entries).
struct GrowthSeries {
    std::string company;
    std::vector<double> rates;
};

struct CompanySummary {
    std::string company;
    double min = 0, max = 0, mean = 0, median = 0, q1 = 0, q3 = 0;
};

/// Per-company revenue statistics plus each company's share of total
/// revenue per period (shares of one period sum to 1).
struct PanelSummary {
    std::vector<CompanySummary> companies;
    std::vector<int> periods;
    std::vector<std::vector<double>> shares;  // companies x periods
};

/// Parses the CSV layout: header `company,<year>,...`, one row per company.
/// Errors name the offending row and column.
RevenuePanel load_panel(std::istream& in);
RevenuePanel load_panel_file(const std::string& path);

/// z[i][t] = (values[i][t] - mu_i) / sigma_i with population stddev.
/// Throws InputError for constant series (sigma = 0).
NormalizedPanel normalize(const RevenuePanel& panel);

/// Appends spec.replicas noisy copies of each row: Y = Z + e with
/// e ~ Normal(0, delta^2) drawn from a counter stream keyed on
/// (seed, replica, row, period). Identical inputs give identical bytes.
NormalizedPanel augment(const NormalizedPanel& panel, const NoiseSpec& spec);

/// rates[t] = values[t+1]/values[t] - 1; denominators must be positive.
std::vector<GrowthSeries> growth_rates(const RevenuePanel& panel);

/// Column slice covering [start_year, end_year] inclusive.
RevenuePanel slice_period(const RevenuePanel& panel, int start_year, int end_year);

PanelSummary summarize(const RevenuePanel& panel);

std::string to_csv(const RevenuePanel& panel);
std::string to_csv(const NormalizedPanel& panel);
std::string to_json(const PanelSummary& summary);

}  // namespace mkt
