#include "fslab/projections/fiber.hpp"

#include <algorithm>

namespace fslab {

namespace {

void merge_in_place(std::vector<Span>& pieces) {
    std::sort(pieces.begin(), pieces.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
    std::size_t out = 0;
    for (const Span& s : pieces) {
        if (out > 0 && s.lo <= pieces[out - 1].hi) {
            pieces[out - 1].hi = std::max(pieces[out - 1].hi, s.hi);
        } else {
            pieces[out++] = s;
        }
    }
    pieces.resize(out);
}

}  // namespace

Span FiberGeometry::clip(const Square& s, std::int64_t key) const {
    if (p_ == 0) {
        if (key < s.x0 || key > s.x1) return {};
        return {s.y0, s.y1};
    }
    return {std::max(p_ * s.y0, key - scale_ * s.x1), std::min(p_ * s.y1, key - scale_ * s.x0)};
}

std::ptrdiff_t FiberTable::find(std::int64_t key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return -1;
    return it - keys.begin();
}

FiberTable build_fibers(std::span<const Square> squares, const FiberGeometry& g, std::vector<std::int64_t> keys) {
    FiberTable t;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    t.keys = std::move(keys);
    t.merged.resize(t.keys.size());
    for (const Square& s : squares) {
        std::int64_t hi = g.key_hi(s);
        for (auto it = std::lower_bound(t.keys.begin(), t.keys.end(), g.key_lo(s)); it != t.keys.end() && *it <= hi; ++it) {
            Span piece = g.clip(s, *it);
            if (!piece.empty()) t.merged[static_cast<std::size_t>(it - t.keys.begin())].push_back(piece);
        }
    }
    for (auto& pieces : t.merged) merge_in_place(pieces);
    return t;
}


FiberTable build_point_fibers(std::span<const Cell2> cells, std::int64_t rho, const FiberGeometry& g,
                              std::vector<std::int64_t> keys) {
    FiberTable t;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    t.keys = std::move(keys);
    t.merged.resize(t.keys.size());

    struct Column {
        std::int64_t x;
        std::vector<Span> runs;  // merged [p (y - rho), p (y + rho)], or y units when p = 0
    };
    const std::int64_t unit = g.p() == 0 ? 1 : g.p();
    std::vector<Column> columns;
    for (std::size_t i = 0; i < cells.size();) {
        Column col{cells[i].x, {}};
        for (; i < cells.size() && cells[i].x == col.x; ++i) {
            Span s{unit * (cells[i].y - rho), unit * (cells[i].y + rho)};
            if (!col.runs.empty() && s.lo <= col.runs.back().hi) {
                col.runs.back().hi = std::max(col.runs.back().hi, s.hi);
            } else {
                col.runs.push_back(s);
            }
        }
        columns.push_back(std::move(col));
    }

    for (std::size_t k = 0; k < t.keys.size(); ++k) {
        const std::int64_t key = t.keys[k];
        auto& pieces = t.merged[k];
        for (const Column& col : columns) {
            Span w = Span::whole();
            if (g.p() == 0) {
                if (key < g.scale() * (col.x - rho) || key > g.scale() * (col.x + rho)) continue;
            } else {
                w = {key - g.scale() * (col.x + rho), key - g.scale() * (col.x - rho)};
            }
            auto it = std::partition_point(col.runs.begin(), col.runs.end(), [&](const Span& r) { return r.hi < w.lo; });
            for (; it != col.runs.end() && it->lo <= w.hi; ++it) pieces.push_back({std::max(it->lo, w.lo), std::min(it->hi, w.hi)});
        }
        merge_in_place(pieces);
    }
    return t;
}

std::int64_t cover_count(std::span<const Span> merged, Span window, std::int64_t len) {
    std::int64_t count = 0;
    bool open = false;
    std::int64_t end = 0;
    auto ceil_div = [](std::int64_t a, std::int64_t b) { return (a + b - 1) / b; };
    auto first = std::partition_point(merged.begin(), merged.end(), [&](const Span& c) { return c.hi < window.lo; });
    for (auto it = first; it != merged.end() && it->lo <= window.hi; ++it) {
        const Span& c = *it;
        std::int64_t lo = std::max(c.lo, window.lo);
        std::int64_t hi = std::min(c.hi, window.hi);
        if (lo > hi) continue;
        if (!open || lo > end) {
            std::int64_t k = std::max<std::int64_t>(1, ceil_div(hi - lo, len));
            count += k;
            end = lo + k * len;
            open = true;
        } else if (hi > end) {
            std::int64_t k = ceil_div(hi - end, len);
            count += k;
            end += k * len;
        }
    }
    return count;
}

}  // namespace fslab
