#pragma once

#include <string>
#include <vector>

#include "mkt/panel.hpp"

namespace mkt {

/// Symmetric Pearson coefficient matrix with unit diagonal.
struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> r;

    std::size_t size() const { return labels.size(); }
    void validate() const;
};

/// Non-negative symmetric dissimilarity with zero diagonal.
struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> d;

    std::size_t size() const { return labels.size(); }
};

/// Pairwise correlation of revenue movement, population covariance.
/// Each pair is computed once and mirrored, so symmetry is exact.
CorrelationMatrix pearson_matrix(const RevenuePanel& panel);
CorrelationMatrix pearson_matrix(const NormalizedPanel& panel);

/// d = 1 - r, mapping "similar movement" to "close" (d in [0, 2]).
DistanceMatrix correlation_distance(const CorrelationMatrix& corr);

std::string to_csv(const CorrelationMatrix& corr);

/// Diverging-scale cell map (-1 blue, 0 white, +1 red) with the numeric
/// value printed in each cell. Byte-deterministic for identical input.
std::string heatmap_svg(const CorrelationMatrix& corr);

}  // namespace mkt
