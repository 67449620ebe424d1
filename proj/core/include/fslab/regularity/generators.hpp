#pragma once

#include <cstdint>
#include <utility>

#include "fslab/dyadic/grid_set.hpp"
#include "fslab/measures/delta_measure.hpp"

namespace fslab {

/// Iterated arithmetic-progression Cantor set: inside each level-m(s) cell the
/// children sit at level-m(s+1) positions offset + k*gap, k < branches.
struct SelfSimilarSpec {
    int branches = 2;
    int gap = 0;  // 0 picks (2^m - 1) / (branches - 1)
    int contraction_level = 1;
    int depth = 1;
    int offset = 0;
};

struct SelfSimilarSet {
    GridSet1D set;
    Measure1D measure;  // natural (uniform) measure
    double nominal_dimension = 0.0;
};

SelfSimilarSet gen_self_similar(const SelfSimilarSpec& spec);

struct ApFamily {
    GridSet1D a;  // {k/n : 1 <= k <= n}
    GridSet1D e;  // {k/n^(2 kappa) : 1 <= k <= n^(2 kappa)}
};

/// Both sets at level log2(n^2).
ApFamily gen_ap_family(std::int64_t n, double kappa);

/// Dyadic percolation on [0, 1): every child of a kept cell survives with the given probability.
GridSet1D gen_random_cantor(Level level, double survival, std::uint64_t seed);

}  // namespace fslab
