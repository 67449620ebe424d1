#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fslab/dyadic/direction.hpp"
#include "fslab/dyadic/grid_set.hpp"
#include "fslab/measures/delta_measure.hpp"

namespace fslab {

struct SingleScaleRow {
    Direction theta;
    std::int64_t min_cover = 0;     // exact min of N_delta(pi_theta(K')) over cell unions K' with mu(K') >= delta^eta
    std::int64_t greedy_cover = 0;  // N_delta(pi_theta(K')) for K' = heaviest cells reaching delta^eta
    std::int64_t full_cover = 0;    // N_delta(pi_theta(K))
    bool verified = false;          // min_cover >= threshold
};

struct SingleScaleResult {
    std::optional<Direction> witness;  // first verified theta in E
    double threshold = 0.0;            // delta^(sigma + eta - gamma)
    std::vector<SingleScaleRow> rows;
};

/// Searches E (cells of a level-q theta grid) for theta with N_delta(pi_theta(K')) >= delta^(sigma+eta-gamma)
/// for all K' with mu(K') >= delta^eta. gamma = alpha + beta.
SingleScaleResult single_scale_check(const Measure2D& mu, const GridSet1D& e, double sigma, double eta, double gamma,
                                     Level delta);

struct FiberDecomposition {
    double c1 = 0.0;  // max_t F_r(t) / sum_B F_r(B)(t)
    double c2 = 0.0;  // max_t #{B : F_r(B)(t) != 0} / F_R(t)
    std::int64_t fibers = 0;
    std::int64_t cover_size = 0;
};

/// Constants of the fiber decomposition over t on the r-grid, with the cover by
/// closed level-R dyadic squares meeting K_r n B(2).
FiberDecomposition fiber_decomposition_check(const GridSet2D& k, const Direction& theta, Level r, Level R);

struct Prop3Params {
    double M = 1.0;
    double N = 1.0;
    Level r;
    Level R;
    double c = 1.0;
    double C = 1.0;
    double c_gamma = 1.0;
};

struct Prop3Outcome {
    double lhs = 0.0;   // mu_1(H(CN, [r, 1]))
    double rhs1 = 0.0;  // mu_1(H(cM, [4R, 5]))
    double rhs2 = 0.0;  // C C_gamma^2 mu_4(H(cN/M, [4r, 7R]))
    bool holds = false;
};

Prop3Outcome prop3_probe(const Measure2D& mu, const Direction& theta, const Prop3Params& params);

}  // namespace fslab
