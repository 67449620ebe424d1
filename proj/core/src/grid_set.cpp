#include "fslab/dyadic/grid_set.hpp"

#include <algorithm>
#include <string>

#include "fslab/error.hpp"

namespace fslab {

IndexRange default_bounds(Level level) {
    CellIndex half = CellIndex{2} << level.value();
    return {-half, half - 1};
}

GridSet1D::GridSet1D(Level level) : level_(level), bounds_(default_bounds(level)) {}

GridSet1D::GridSet1D(Level level, std::vector<CellIndex> cells)
    : GridSet1D(level, std::move(cells), default_bounds(level)) {}

GridSet1D::GridSet1D(Level level, std::vector<CellIndex> cells, IndexRange bounds)
    : level_(level), bounds_(bounds), cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    if (!cells_.empty() && (!bounds_.contains(cells_.front()) || !bounds_.contains(cells_.back()))) {
        throw Error("cell index outside bounds [" + std::to_string(bounds_.lo) + ", " +
                    std::to_string(bounds_.hi) + "]");
    }
}

GridSet1D GridSet1D::widened(Level level, std::vector<CellIndex> cells) {
    IndexRange b = default_bounds(level);
    for (CellIndex k : cells) {
        b.lo = std::min(b.lo, k);
        b.hi = std::max(b.hi, k);
    }
    return GridSet1D(level, std::move(cells), b);
}

bool GridSet1D::contains(CellIndex k) const {
    return std::binary_search(cells_.begin(), cells_.end(), k);
}

GridSet2D::GridSet2D(Level level, std::vector<Cell2> cells)
    : GridSet2D(level, std::move(cells), Bounds2{default_bounds(level), default_bounds(level)}) {}

GridSet2D::GridSet2D(Level level, std::vector<Cell2> cells, Bounds2 bounds) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (const Cell2& c : cells) {
        if (!bounds.contains(c)) {
            throw Error("cell (" + std::to_string(c.x) + ", " + std::to_string(c.y) + ") outside bounds");
        }
    }
    rep_ = Explicit{level, bounds, std::move(cells)};
}

GridSet2D::GridSet2D(GridSet1D a, GridSet1D b) {
    if (a.level() != b.level()) throw Error("product of sets at different levels");
    rep_ = Product{std::move(a), std::move(b)};
}

Level GridSet2D::level() const {
    if (const auto* p = std::get_if<Product>(&rep_)) return p->a.level();
    return std::get<Explicit>(rep_).level;
}

Bounds2 GridSet2D::bounds() const {
    if (const auto* p = std::get_if<Product>(&rep_)) return {p->a.bounds(), p->b.bounds()};
    return std::get<Explicit>(rep_).bounds;
}

std::size_t GridSet2D::size() const {
    if (const auto* p = std::get_if<Product>(&rep_)) return p->a.size() * p->b.size();
    return std::get<Explicit>(rep_).cells.size();
}

bool GridSet2D::contains(Cell2 c) const {
    if (const auto* p = std::get_if<Product>(&rep_)) return p->a.contains(c.x) && p->b.contains(c.y);
    const auto& cells = std::get<Explicit>(rep_).cells;
    return std::binary_search(cells.begin(), cells.end(), c);
}

const GridSet1D& GridSet2D::factor_x() const {
    if (const auto* p = std::get_if<Product>(&rep_)) return p->a;
    throw Error("set is not a product");
}

const GridSet1D& GridSet2D::factor_y() const {
    if (const auto* p = std::get_if<Product>(&rep_)) return p->b;
    throw Error("set is not a product");
}

std::vector<Cell2> GridSet2D::cells() const {
    if (const auto* p = std::get_if<Product>(&rep_)) {
        std::vector<Cell2> out;
        out.reserve(p->a.size() * p->b.size());
        for (CellIndex x : p->a.cells()) {
            for (CellIndex y : p->b.cells()) out.push_back({x, y});
        }
        return out;
    }
    return std::get<Explicit>(rep_).cells;
}

GridSet2D GridSet2D::materialize() const {
    if (!is_product()) return *this;
    return GridSet2D(level(), cells(), bounds());
}

bool operator==(const GridSet2D& a, const GridSet2D& b) {
    if (a.level() != b.level() || a.size() != b.size()) return false;
    if (a.is_product() && b.is_product()) {
        return a.empty() || (a.factor_x() == b.factor_x() && a.factor_y() == b.factor_y());
    }
    return a.cells() == b.cells();
}

GridSet2D product(const GridSet1D& a, const GridSet1D& b) { return GridSet2D(a, b); }

}  // namespace fslab
