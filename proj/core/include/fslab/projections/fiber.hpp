#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fslab/dyadic/direction.hpp"
#include "fslab/dyadic/grid_set.hpp"

namespace fslab {

/// Closed integer interval.
struct Span {
    std::int64_t lo = 0;
    std::int64_t hi = -1;
    bool empty() const { return hi < lo; }
    static Span whole() {
        return {std::numeric_limits<std::int64_t>::min() / 4, std::numeric_limits<std::int64_t>::max() / 4};
    }
};

/// Closed axis-parallel square in cell units.
struct Square {
    std::int64_t x0, y0, x1, y1;
};

/// Lines 2^q X + p Y = key for theta = p / 2^q, in cell units.
/// Points on a line are parametrized by u = p Y (u = Y when p = 0).
class FiberGeometry {
public:
    explicit FiberGeometry(const Direction& theta) : p_(theta.numerator()), scale_(std::int64_t{1} << theta.level()) {}

    std::int64_t key(std::int64_t x, std::int64_t y) const { return scale_ * x + p_ * y; }
    std::int64_t key_lo(const Square& s) const { return key(s.x0, s.y0); }
    std::int64_t key_hi(const Square& s) const { return key(s.x1, s.y1); }

    /// Parameter range of the line inside the square; empty if they miss.
    Span clip(const Square& s, std::int64_t key) const;

    /// Parameter length covered by one closed l-infinity ball of radius rho.
    std::int64_t ball_length(std::int64_t rho) const { return 2 * rho * (p_ == 0 ? 1 : p_); }
    std::int64_t p() const { return p_; }
    std::int64_t scale() const { return scale_; }

private:
    std::int64_t p_;
    std::int64_t scale_;
};

/// Grid point (i, j) thickened by rho: [i - rho, i + rho] x [j - rho, j + rho].
inline Square thickened(Cell2 c, std::int64_t rho) { return {c.x - rho, c.y - rho, c.x + rho, c.y + rho}; }

/// Per-line merged pieces of the union of squares, for each requested key.
struct FiberTable {
    std::vector<std::int64_t> keys;          // sorted, unique
    std::vector<std::vector<Span>> merged;   // disjoint closed components per key, sorted

    std::ptrdiff_t find(std::int64_t key) const;
};

FiberTable build_fibers(std::span<const Square> squares, const FiberGeometry& g, std::vector<std::int64_t> keys);

/// Same table as build_fibers over the squares thickened(c, rho), c in `cells` (sorted),
/// computed column by column: each column's merged y-runs are clipped to the column's window on the line.
FiberTable build_point_fibers(std::span<const Cell2> cells, std::int64_t rho, const FiberGeometry& g,
                              std::vector<std::int64_t> keys);
/// Minimal number of closed intervals of length `len` covering the components clipped to `window`.
std::int64_t cover_count(std::span<const Span> merged, Span window, std::int64_t len);

}  // namespace fslab
