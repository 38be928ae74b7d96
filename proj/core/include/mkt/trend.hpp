#pragma once

#include <span>
#include <string>
#include <vector>

#include "mkt/panel.hpp"

namespace mkt {

struct RidgeSpec {
    double lambda = 1.0;              // regularization strength, >= 0
    bool penalize_intercept = false;  // default keeps fits origin-independent
};

enum class TrendKind { shared_sum, shared_mean, company };

struct TrendLine {
    double slope = 0;      // revenue units per year
    double intercept = 0;  // revenue units at t = 0
    double lambda_used = 0;
    TrendKind kind = TrendKind::company;

    double at(double t) const { return slope * t + intercept; }
};

enum class TrendLabel { growing, tracking, lagging };
const char* to_string(TrendLabel label);

struct CompanyTrend {
    std::string company;
    TrendLine line;
    std::vector<double> residuals;  // observed minus fitted, per period
    TrendLabel label = TrendLabel::tracking;
};

struct SharedTrends {
    TrendLine sum;   // fitted to column sums (total market)
    TrendLine mean;  // fitted to column means (average market)
};

/// Ridge regression of y on t. With the default unpenalized intercept:
/// slope = sum(t'y') / (sum(t'^2) + lambda) on centered data, and
/// intercept = mean(y) - slope * mean(t). lambda = 0 is ordinary least
/// squares.
TrendLine ridge_fit(std::span<const double> t, std::span<const double> y,
                    const RidgeSpec& spec);

/// Market-wide trends on the panel's column sums and column means.
SharedTrends shared_trend(const RevenuePanel& panel, const RidgeSpec& spec);

/// Per-company fits with residuals; each company is labelled "tracking"
/// when its slope is within 5% of the shared mean slope, else "growing" or
/// "lagging" by comparison against it.
std::vector<CompanyTrend> company_trends(const RevenuePanel& panel, const RidgeSpec& spec);

std::string trend_report_json(const SharedTrends& shared,
                              const std::vector<CompanyTrend>& companies);

/// Line chart: one polyline per company, dashed shared trends, legend with
/// N+2 entries. Byte-deterministic.
std::string trend_chart_svg(const RevenuePanel& panel, const SharedTrends& shared,
                            const std::vector<CompanyTrend>& companies);

}  // namespace mkt
