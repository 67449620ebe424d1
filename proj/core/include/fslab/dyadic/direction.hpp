#pragma once

#include <cstdint>

#include "fslab/dyadic/level.hpp"

namespace fslab {

inline constexpr int kMaxDirectionLevel = 20;

/// Direction theta = p / 2^q in [0, 1], reduced so that p is odd unless theta is 0 or 1.
class Direction {
public:
    Direction() = default;
    Direction(std::int64_t p, int q);

    std::int64_t numerator() const { return p_; }
    int level() const { return q_; }
    double value() const;

    friend bool operator==(const Direction&, const Direction&) = default;

private:
    std::int64_t p_ = 0;
    int q_ = 0;
};

/// Rounded projection [x] + [theta y] of the grid point (x, y) at level L, in level-L cells.
inline CellIndex project_point(CellIndex x, CellIndex y, const Direction& theta) {
    return x + floor_shift(theta.numerator() * y, theta.level());
}

}  // namespace fslab
