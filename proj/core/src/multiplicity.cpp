#include "fslab/projections/multiplicity.hpp"

#include <algorithm>
#include <cmath>

#include "fslab/error.hpp"
#include "fslab/projections/fiber.hpp"

namespace fslab {

namespace {

std::int64_t radius_cells(const ScaleWindow& w, Level level) {
    std::int64_t rho = w.r_cells(level);
    if (rho < 1) throw Error("window radius r must be at least one cell");
    return rho;
}

Span ball_span(const FiberGeometry& g, Cell2 x, std::optional<std::int64_t> rho_big, std::int64_t key) {
    if (!rho_big) return Span::whole();
    return g.clip(thickened(x, *rho_big), key);
}

}  // namespace

std::int64_t multiplicity(const GridSet2D& k, const Direction& theta, Cell2 x, const ScaleWindow& window) {
    if (!k.contains(x)) throw Error("multiplicity center is not a cell of K");
    const Level level = k.level();
    const std::int64_t rho = radius_cells(window, level);
    const auto rho_big = window.R_cells(level);
    FiberGeometry g(theta);
    const std::int64_t key = g.key(x.x, x.y);
    FiberTable t = build_point_fibers(k.cells(), rho, g, {key});
    return cover_count(t.merged[0], ball_span(g, x, rho_big, key), g.ball_length(rho));
}

std::vector<std::int64_t> multiplicities(const GridSet2D& k, const Direction& theta, const ScaleWindow& window) {
    const Level level = k.level();
    const std::int64_t rho = radius_cells(window, level);
    const auto rho_big = window.R_cells(level);
    FiberGeometry g(theta);
    const std::vector<Cell2> cells = k.cells();
    std::vector<std::int64_t> keys;
    keys.reserve(cells.size());
    for (const Cell2& c : cells) keys.push_back(g.key(c.x, c.y));
    FiberTable t = build_point_fibers(cells, rho, g, keys);
    std::vector<std::int64_t> out(cells.size());
    const std::int64_t len = g.ball_length(rho);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::int64_t key = keys[i];
        const auto& merged = t.merged[static_cast<std::size_t>(t.find(key))];
        out[i] = cover_count(merged, ball_span(g, cells[i], rho_big, key), len);
    }
    return out;
}

GridSet2D high_multiplicity_set(const GridSet2D& k, const Direction& theta, double threshold,
                                const ScaleWindow& window) {
    if (!(threshold > 0.0)) throw Error("multiplicity threshold must be positive");
    const std::vector<Cell2> cells = k.cells();
    std::vector<Cell2> out;
    if (threshold <= 1.0) {
        out = cells;
    } else {
        auto m = multiplicities(k, theta, window);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (static_cast<double>(m[i]) >= threshold) out.push_back(cells[i]);
        }
    }
    return GridSet2D(k.level(), std::move(out), k.bounds());
}

}  // namespace fslab
