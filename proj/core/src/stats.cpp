#include "mkt/stats.hpp"

#include <cmath>
#include <cstddef>

namespace mkt::stats {

double mean(std::span<const double> xs) {
    double s = 0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double population_variance(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    const double m = mean(xs);
    double s = 0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size());
}

double population_stddev(std::span<const double> xs) {
    return std::sqrt(population_variance(xs));
}

double sample_stddev(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double m = mean(xs);
    double s = 0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(n - 1));
}

double quantile_sorted(std::span<const double> sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 0) return 0.0;
    if (n == 1) return sorted[0];
    if (p <= 0) return sorted.front();
    if (p >= 1) return sorted.back();
    const double pos = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= n) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double pearson(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace mkt::stats
