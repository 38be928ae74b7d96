#pragma once

#include <span>

namespace mkt::stats {

double mean(std::span<const double> xs);

// Population moments (divisor n).
double population_variance(std::span<const double> xs);
double population_stddev(std::span<const double> xs);

// Sample standard deviation (divisor n-1); 0 for n < 2.
double sample_stddev(std::span<const double> xs);

// Quantile with linear interpolation between closest ranks; input must be
// sorted ascending, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// Pearson correlation using population moments. Callers must ensure both
// series have positive variance.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace mkt::stats
