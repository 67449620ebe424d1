#pragma once

#include <optional>
#include <vector>

#include "fslab/content/exponent.hpp"
#include "fslab/content/power_sum.hpp"
#include "fslab/dyadic/grid_set.hpp"
#include "fslab/measures/delta_measure.hpp"

namespace fslab {

/// Dyadic interval [index 2^-level, (index+1) 2^-level).
struct DyadicInterval {
    int level = 0;
    CellIndex index = 0;
    friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Resolution-limited dyadic Hausdorff content with an optimal cover.
struct ContentValue {
    double value = 0.0;
    std::optional<PowerSum> exact;  // present when tau = p/q admits exact arithmetic
    Exponent tau{1.0};
    std::vector<DyadicInterval> cover;  // sorted, pairwise disjoint, lengths in [2^-L, 1]
};

/// min over covers of S by dyadic intervals of length in [2^-L, 1] of sum |I|^tau.
ContentValue dyadic_content(const GridSet1D& s, Exponent tau);

struct FrostmanResult {
    /// Proportional top-down assignment of the bottom-up capacities.
    Measure1D measure;
    /// Leaf masses from augmenting paths on the capacity tree.
    Measure1D flow_measure;
    double mass = 0.0;
    std::optional<PowerSum> exact_mass;  // maximal flow, exact when available
};

/// Measure on S of maximal mass with mu(I) <= |I|^tau for every dyadic I of length in [2^-L, 1].
FrostmanResult max_frostman(const GridSet1D& s, Exponent tau);

/// Whether the pair (tau, level) is handled in exact arithmetic.
bool exact_content_mode(Exponent tau, Level level);

}  // namespace fslab
