#include "fslab/projections/projection.hpp"

#include <algorithm>
#include <string>

#include "fslab/error.hpp"

namespace fslab {

namespace {

void require_coarser(Level target, Level own) {
    if (target > own) throw Error("projection target level finer than the set");
}

// Distinct values of (v >> shift) over the given values, sorted.
class CellCollector {
public:
    CellCollector(std::int64_t lo, std::int64_t hi, int shift) : shift_(shift), base_(floor_shift(lo, shift)) {
        auto span = static_cast<std::size_t>(floor_shift(hi, shift) - base_ + 1);
        dense_ = span <= (std::size_t{1} << 28);
        if (dense_) seen_.assign(span, false);
    }
    void add(std::int64_t v) {
        std::int64_t c = floor_shift(v, shift_);
        if (dense_) {
            seen_[static_cast<std::size_t>(c - base_)] = true;
        } else {
            sparse_.push_back(c);
        }
    }
    std::vector<CellIndex> take() {
        std::vector<CellIndex> out;
        if (dense_) {
            for (std::size_t i = 0; i < seen_.size(); ++i) {
                if (seen_[i]) out.push_back(base_ + static_cast<std::int64_t>(i));
            }
        } else {
            std::sort(sparse_.begin(), sparse_.end());
            sparse_.erase(std::unique(sparse_.begin(), sparse_.end()), sparse_.end());
            out = std::move(sparse_);
        }
        return out;
    }

private:
    int shift_;
    std::int64_t base_;
    bool dense_;
    std::vector<bool> seen_;
    std::vector<std::int64_t> sparse_;
};

}  // namespace

GridSet1D project_set(const GridSet2D& k, const Direction& theta, Level target) {
    require_coarser(target, k.level());
    const int shift = k.level().value() - target.value();
    if (k.empty()) return GridSet1D(target);
    if (k.is_product()) {
        const auto a = k.factor_x().cells();
        std::vector<CellIndex> b;
        for (CellIndex y : k.factor_y().cells()) b.push_back(project_point(0, y, theta));
        b.erase(std::unique(b.begin(), b.end()), b.end());  // monotone, so already sorted
        CellCollector out(a.front() + b.front(), a.back() + b.back(), shift);
        for (CellIndex x : a) {
            for (CellIndex y : b) out.add(x + y);
        }
        return GridSet1D::widened(target, out.take());
    }
    std::vector<CellIndex> pts;
    for (const Cell2& c : k.cells()) pts.push_back(project_point(c.x, c.y, theta));
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    CellCollector out(*lo, *hi, shift);
    for (CellIndex v : pts) out.add(v);
    return GridSet1D::widened(target, out.take());
}

GridSet1D affine_sumset(const GridSet1D& a, const GridSet1D& e, const GridSet1D& b, Level target) {
    if (a.level() != e.level() || a.level() != b.level()) throw Error("affine_sumset needs a common level");
    require_coarser(target, a.level());
    if (a.empty() || e.empty() || b.empty()) return GridSet1D(target);
    const int L = a.level().value();
    // a + c b in units of 2^-2L.
    const int shift = 2 * L - target.value();
    auto value = [&](CellIndex x, CellIndex c, CellIndex y) {
        __int128 v = (static_cast<__int128>(x) << L) + static_cast<__int128>(c) * y;
        if (v > INT64_MAX / 2 || v < INT64_MIN / 2) throw Error("affine_sumset overflow");
        return static_cast<std::int64_t>(v);
    };
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (CellIndex c : {e.cells().front(), e.cells().back()}) {
        for (CellIndex y : {b.cells().front(), b.cells().back()}) {
            for (CellIndex x : {a.cells().front(), a.cells().back()}) {
                lo = std::min(lo, value(x, c, y));
                hi = std::max(hi, value(x, c, y));
            }
        }
    }
    CellCollector out(lo, hi, shift);
    for (CellIndex c : e.cells()) {
        for (CellIndex y : b.cells()) {
            std::int64_t cy = value(0, c, y);
            for (CellIndex x : a.cells()) out.add((static_cast<std::int64_t>(x) << L) + cy);
        }
    }
    return GridSet1D::widened(target, out.take());
}

}  // namespace fslab
