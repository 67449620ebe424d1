#pragma once

#include <cstddef>

#include "fslab/dyadic/grid_set.hpp"

namespace fslab {

/// Level-`target` cells meeting S.
GridSet1D covering_cells(const GridSet1D& s, Level target);
GridSet2D covering_cells(const GridSet2D& s, Level target);

std::size_t covering_number(const GridSet1D& s, Level target);
std::size_t covering_number(const GridSet2D& s, Level target);

/// Cells of S's level within l-infinity distance 2^-r of S, clipped to bounds.
GridSet1D neighborhood(const GridSet1D& s, Level r);
GridSet2D neighborhood(const GridSet2D& s, Level r);

/// Rescaling map w -> (w - z0) / r0 with r0 = 2^-scale_level.
class RescaleMap {
public:
    RescaleMap() = default;
    RescaleMap(Dyadic z0x, Dyadic z0y, int scale_level);

    static RescaleMap identity() { return {}; }

    const Dyadic& z0x() const { return z0x_; }
    const Dyadic& z0y() const { return z0y_; }
    int scale_level() const { return scale_level_; }
    Dyadic scale() const { return Dyadic::power(scale_level_); }

    RescaleMap inverse() const;

private:
    Dyadic z0x_;
    Dyadic z0y_;
    int scale_level_ = 0;
};

/// Exact image T(S); the 1D form uses z0x only.
GridSet1D rescale(const GridSet1D& s, const RescaleMap& t);
GridSet2D rescale(const GridSet2D& s, const RescaleMap& t);

}  // namespace fslab
