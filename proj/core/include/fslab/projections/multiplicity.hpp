#pragma once

#include <cstdint>
#include <vector>

#include "fslab/dyadic/direction.hpp"
#include "fslab/dyadic/grid_set.hpp"
#include "fslab/projections/window.hpp"

namespace fslab {

/// m_{K,theta}(x | [r, R]): minimal number of closed r-balls covering
/// B(x, R) n K_r n pi_theta^{-1}{pi_theta(x)}, where K_r and B(x, R) are the
/// closed l-infinity thickenings of the grid points and the fiber passes through x.
std::int64_t multiplicity(const GridSet2D& k, const Direction& theta, Cell2 x, const ScaleWindow& window);

/// Multiplicity of every cell of K, in sorted cell order.
std::vector<std::int64_t> multiplicities(const GridSet2D& k, const Direction& theta, const ScaleWindow& window);

/// {x in K : m(x) >= threshold} as an explicit set.
GridSet2D high_multiplicity_set(const GridSet2D& k, const Direction& theta, double threshold,
                                const ScaleWindow& window);

}  // namespace fslab
