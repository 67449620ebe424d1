#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "fslab/dyadic/level.hpp"

namespace fslab {

/// Ambient index range of a 1D set at a level: [-2, 2) in cells.
IndexRange default_bounds(Level level);

/// Finite union of level-L dyadic cells [k 2^-L, (k+1) 2^-L).
///
/// Each cell also stands for its left endpoint k 2^-L when a set is
/// treated as a set of grid points (projections, sumsets).
class GridSet1D {
public:
    GridSet1D() : GridSet1D(Level(0)) {}
    explicit GridSet1D(Level level);
    GridSet1D(Level level, std::vector<CellIndex> cells);
    GridSet1D(Level level, std::vector<CellIndex> cells, IndexRange bounds);

    /// Default bounds, widened as needed to hold the given cells.
    static GridSet1D widened(Level level, std::vector<CellIndex> cells);

    Level level() const { return level_; }
    IndexRange bounds() const { return bounds_; }
    std::span<const CellIndex> cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    bool contains(CellIndex k) const;

    friend bool operator==(const GridSet1D& a, const GridSet1D& b) {
        return a.level_ == b.level_ && a.cells_ == b.cells_;
    }

private:
    Level level_;
    IndexRange bounds_;
    std::vector<CellIndex> cells_;
};

struct Cell2 {
    CellIndex x = 0;
    CellIndex y = 0;
    friend auto operator<=>(const Cell2&, const Cell2&) = default;
};

struct Bounds2 {
    IndexRange x;
    IndexRange y;
    bool contains(Cell2 c) const { return x.contains(c.x) && y.contains(c.y); }
    friend bool operator==(const Bounds2&, const Bounds2&) = default;
};

/// Planar set of level-L cells, either an explicit list or a lazy product A x B.
class GridSet2D {
public:
    GridSet2D() : GridSet2D(Level(0), {}) {}
    GridSet2D(Level level, std::vector<Cell2> cells);
    GridSet2D(Level level, std::vector<Cell2> cells, Bounds2 bounds);
    GridSet2D(GridSet1D a, GridSet1D b);  // product; levels must agree

    Level level() const;
    Bounds2 bounds() const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    bool contains(Cell2 c) const;

    bool is_product() const { return std::holds_alternative<Product>(rep_); }
    const GridSet1D& factor_x() const;  // throws unless is_product()
    const GridSet1D& factor_y() const;

    /// Sorted cell list; materializes products.
    std::vector<Cell2> cells() const;
    GridSet2D materialize() const;

    friend bool operator==(const GridSet2D& a, const GridSet2D& b);

private:
    struct Explicit {
        Level level;
        Bounds2 bounds;
        std::vector<Cell2> cells;
    };
    struct Product {
        GridSet1D a;
        GridSet1D b;
    };
    std::variant<Explicit, Product> rep_;
};

GridSet2D product(const GridSet1D& a, const GridSet1D& b);

}  // namespace fslab
