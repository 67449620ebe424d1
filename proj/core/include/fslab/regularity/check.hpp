#pragma once

#include <vector>

#include "fslab/dyadic/grid_set.hpp"
#include "fslab/measures/delta_measure.hpp"

namespace fslab {

struct RegularityParams {
    double exponent = 1.0;
    double constant = 1.0;

    RegularityParams() = default;
    RegularityParams(double exponent, double constant);  // validates 0 <= exponent <= 2, constant >= 1
};

enum class RegularityMode { SetUpper, FrostmanUpper };

/// DyadicCell: B(x, R) is the level-R dyadic cell containing x.
/// Window: B(x, R) is the l-infinity ball of radius 2^-R around x's grid point.
enum class BallShape { DyadicCell, Window };

struct ScalePair {
    Level r;
    Level R;
};

/// All pairs with 0 <= R <= r <= level.
std::vector<ScalePair> all_scale_pairs(Level level);

struct RegularityWitness {
    Cell2 center;  // 1D subjects use center.y = 0
    int r_level = 0;
    int R_level = 0;
};

struct RegularityReport {
    bool satisfied = true;
    double worst_ratio = 0.0;
    RegularityWitness witness;
};

/// Exhaustive check over all cells of `set` as centers and all scale pairs.
/// SetUpper: N_r(K n B(x,R)) <= C (R/r)^a. FrostmanUpper: mu(B(x,r)) <= C r^a (R unused).
RegularityReport check_regularity(const GridSet1D& set, const Measure1D& mu, const RegularityParams& params,
                                  RegularityMode mode, const std::vector<ScalePair>& scales,
                                  BallShape shape = BallShape::DyadicCell);
RegularityReport check_regularity(const GridSet2D& set, const Measure2D& mu, const RegularityParams& params,
                                  RegularityMode mode, const std::vector<ScalePair>& scales,
                                  BallShape shape = BallShape::DyadicCell);

/// Smallest C >= 1 passing both conditions on all scale pairs of the set's level.
double regularity_constant(const GridSet1D& set, const Measure1D& mu, double exponent,
                           BallShape shape = BallShape::DyadicCell);

}  // namespace fslab
