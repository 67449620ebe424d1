#include "fslab/dyadic/ops.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "fslab/error.hpp"

namespace fslab {

namespace {

void require_coarser(Level target, Level own, const char* what) {
    if (target > own) {
        throw Error(std::string(what) + ": cannot refine without set model (target level " +
                    std::to_string(target.value()) + " > " + std::to_string(own.value()) + ")");
    }
}

IndexRange coarsen(IndexRange r, int shift) { return {floor_shift(r.lo, shift), floor_shift(r.hi, shift)}; }

// Union of [k - rho, k + rho] over sorted ks, clipped to bounds.
std::vector<std::pair<CellIndex, CellIndex>> dilate(std::span<const CellIndex> ks, CellIndex rho, IndexRange bounds) {
    std::vector<std::pair<CellIndex, CellIndex>> out;
    for (CellIndex k : ks) {
        CellIndex lo = std::max(k - rho, bounds.lo);
        CellIndex hi = std::min(k + rho, bounds.hi);
        if (lo > hi) continue;
        if (!out.empty() && lo <= out.back().second + 1) {
            out.back().second = std::max(out.back().second, hi);
        } else {
            out.emplace_back(lo, hi);
        }
    }
    return out;
}

CellIndex radius_in_cells(Level own, Level r) {
    require_coarser(r, own, "neighborhood");
    return CellIndex{1} << (own.value() - r.value());
}

}  // namespace

GridSet1D covering_cells(const GridSet1D& s, Level target) {
    require_coarser(target, s.level(), "covering_cells");
    int shift = s.level().value() - target.value();
    std::vector<CellIndex> out;
    out.reserve(s.size());
    for (CellIndex k : s.cells()) {
        CellIndex c = floor_shift(k, shift);
        if (out.empty() || out.back() != c) out.push_back(c);
    }
    return GridSet1D(target, std::move(out), coarsen(s.bounds(), shift));
}

GridSet2D covering_cells(const GridSet2D& s, Level target) {
    require_coarser(target, s.level(), "covering_cells");
    if (s.is_product()) return GridSet2D(covering_cells(s.factor_x(), target), covering_cells(s.factor_y(), target));
    int shift = s.level().value() - target.value();
    std::vector<Cell2> out;
    out.reserve(s.size());
    for (const Cell2& c : s.cells()) out.push_back({floor_shift(c.x, shift), floor_shift(c.y, shift)});
    Bounds2 b = s.bounds();
    return GridSet2D(target, std::move(out), {coarsen(b.x, shift), coarsen(b.y, shift)});
}

std::size_t covering_number(const GridSet1D& s, Level target) { return covering_cells(s, target).size(); }

std::size_t covering_number(const GridSet2D& s, Level target) { return covering_cells(s, target).size(); }

GridSet1D neighborhood(const GridSet1D& s, Level r) {
    CellIndex rho = radius_in_cells(s.level(), r);
    std::vector<CellIndex> out;
    for (auto [lo, hi] : dilate(s.cells(), rho, s.bounds())) {
        for (CellIndex k = lo; k <= hi; ++k) out.push_back(k);
    }
    return GridSet1D(s.level(), std::move(out), s.bounds());
}

GridSet2D neighborhood(const GridSet2D& s, Level r) {
    if (s.is_product()) return GridSet2D(neighborhood(s.factor_x(), r), neighborhood(s.factor_y(), r));
    CellIndex rho = radius_in_cells(s.level(), r);
    Bounds2 b = s.bounds();
    std::vector<Cell2> cells = s.cells();

    // Dilate each column in y, then smear columns across x.
    std::map<CellIndex, std::vector<std::pair<CellIndex, CellIndex>>> columns;
    std::vector<CellIndex> ys;
    for (std::size_t i = 0; i < cells.size();) {
        std::size_t j = i;
        ys.clear();
        while (j < cells.size() && cells[j].x == cells[i].x) ys.push_back(cells[j++].y);
        auto runs = dilate(ys, rho, b.y);
        CellIndex x0 = std::max(cells[i].x - rho, b.x.lo);
        CellIndex x1 = std::min(cells[i].x + rho, b.x.hi);
        for (CellIndex x = x0; x <= x1; ++x) {
            auto& col = columns[x];
            col.insert(col.end(), runs.begin(), runs.end());
        }
        i = j;
    }
    std::vector<Cell2> out;
    for (auto& [x, runs] : columns) {
        std::sort(runs.begin(), runs.end());
        CellIndex next = b.y.lo - 1;
        for (auto [lo, hi] : runs) {
            for (CellIndex y = std::max(lo, next + 1); y <= hi; ++y) out.push_back({x, y});
            next = std::max(next, hi);
        }
    }
    return GridSet2D(s.level(), std::move(out), b);
}

RescaleMap::RescaleMap(Dyadic z0x, Dyadic z0y, int scale_level)
    : z0x_(Dyadic::make(z0x.num, z0x.exp)), z0y_(Dyadic::make(z0y.num, z0y.exp)), scale_level_(scale_level) {}

RescaleMap RescaleMap::inverse() const {
    // w -> r0 w + z0, i.e. translation -z0/r0 and scale 1/r0.
    Dyadic ix = Dyadic::make(-z0x_.num, z0x_.exp - scale_level_);
    Dyadic iy = Dyadic::make(-z0y_.num, z0y_.exp - scale_level_);
    return RescaleMap(ix, iy, -scale_level_);
}

namespace {

Level rescaled_level(Level own, const RescaleMap& t) {
    int l = own.value() - t.scale_level();
    if (l < 0 || l > max_level()) {
        throw Error("rescaled level " + std::to_string(l) + " is not representable");
    }
    return Level(l);
}

CellIndex shift_of(const Dyadic& z, Level own) {
    if (!z.is_integer_at(own.value())) throw Error("rescaling translation is not on the set's grid");
    return z.at(own.value());
}

IndexRange shifted(IndexRange r, CellIndex a) { return {r.lo - a, r.hi - a}; }

}  // namespace

GridSet1D rescale(const GridSet1D& s, const RescaleMap& t) {
    Level out_level = rescaled_level(s.level(), t);
    CellIndex a = shift_of(t.z0x(), s.level());
    std::vector<CellIndex> out(s.cells().begin(), s.cells().end());
    for (CellIndex& k : out) k -= a;
    return GridSet1D(out_level, std::move(out), shifted(s.bounds(), a));
}

GridSet2D rescale(const GridSet2D& s, const RescaleMap& t) {
    if (s.is_product()) {
        RescaleMap ty(t.z0y(), Dyadic{}, t.scale_level());
        return GridSet2D(rescale(s.factor_x(), t), rescale(s.factor_y(), ty));
    }
    Level out_level = rescaled_level(s.level(), t);
    CellIndex ax = shift_of(t.z0x(), s.level());
    CellIndex ay = shift_of(t.z0y(), s.level());
    std::vector<Cell2> out = s.cells();
    for (Cell2& c : out) {
        c.x -= ax;
        c.y -= ay;
    }
    Bounds2 b = s.bounds();
    return GridSet2D(out_level, std::move(out), {shifted(b.x, ax), shifted(b.y, ay)});
}

}  // namespace fslab
