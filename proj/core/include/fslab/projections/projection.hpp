#pragma once

#include "fslab/dyadic/direction.hpp"
#include "fslab/dyadic/grid_set.hpp"

namespace fslab {

/// Level-`target` cells containing [x] + [theta y] for the grid points (x, y) of K.
/// Products are handled as the sumset A + [theta B].
GridSet1D project_set(const GridSet2D& k, const Direction& theta, Level target);

/// Level-`target` cells containing a + c b for a in A, c in E, b in B (exact).
GridSet1D affine_sumset(const GridSet1D& a, const GridSet1D& e, const GridSet1D& b, Level target);

}  // namespace fslab
