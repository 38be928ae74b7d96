#pragma once

#include <string>
#include <vector>

#include "mkt/correlation.hpp"

namespace mkt {

/// Partition of the labelled items into k non-empty clusters. The
/// objective is the sum of pairwise distances inside clusters, each
/// unordered pair counted once.
struct ClusterAssignment {
    int k = 0;
    std::vector<std::string> labels;
    std::vector<int> assignment;  // one cluster id in [0, k) per label
    double objective = 0;
};

/// Minimizes the within-cluster pairwise distance sum. Exhaustive (globally
/// optimal) for up to 10 items, ties broken by lexicographically smallest
/// assignment vector; larger instances use average-linkage agglomeration
/// followed by single-element relocation, floored by the best of 100 seeded
/// random partitions.
ClusterAssignment cluster(const DistanceMatrix& dist, int k);

std::string to_json(const ClusterAssignment& a);

}  // namespace mkt
