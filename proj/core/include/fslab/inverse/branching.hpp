#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "fslab/dyadic/grid_set.hpp"

namespace fslab {

/// Uniform branching: every level-ms ancestor has counts[s] children at level m(s+1).
struct BranchingProfile {
    int base = 1;
    int length = 0;
    std::vector<std::int64_t> counts;

    std::int64_t product() const;
};

/// Per-scale histogram child count -> number of parents, for sets that do not branch uniformly.
struct NonUniformReport {
    int base = 1;
    int length = 0;
    std::vector<std::map<std::int64_t, std::int64_t>> distribution;
    std::vector<int> nonuniform_scales;
};

using BranchingAnalysis = std::variant<BranchingProfile, NonUniformReport>;

/// Requires U.level == m N and U nonempty.
BranchingAnalysis branching_profile(const GridSet1D& u, int m, int n);

struct UniformSubset {
    GridSet1D subset;
    BranchingProfile profile;
    double retained_fraction = 0.0;
};

/// Largest-mode pruning from the finest scale up: at each scale parents keep the
/// modal child count (ties to the smaller count), lowest indices first; poorer parents are dropped.
UniformSubset regularize_uniform_subset(const GridSet1D& u, int m, int n);

}  // namespace fslab
