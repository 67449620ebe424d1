#include "fslab/inverse/branching.hpp"

#include <algorithm>
#include <string>

#include "fslab/error.hpp"

namespace fslab {

std::int64_t BranchingProfile::product() const {
    std::int64_t p = 1;
    for (std::int64_t c : counts) p *= c;
    return p;
}

namespace {

void require_shape(const GridSet1D& u, int m, int n) {
    if (m < 1 || n < 0) throw Error("branching needs m >= 1 and N >= 0");
    if (u.level().value() != m * n) {
        throw Error("branching level mismatch: set level " + std::to_string(u.level().value()) + " != m N = " +
                    std::to_string(m * n));
    }
}

// Child counts of every level-ms parent of the sorted cells, in parent order.
struct ScaleGroups {
    std::vector<std::int64_t> counts;
    std::vector<std::size_t> parent_begin;  // first cell of each parent
    std::vector<std::vector<std::size_t>> child_begin;  // first cell of each child, per parent
};

ScaleGroups group_scale(const std::vector<CellIndex>& cells, int m, int n, int s) {
    const int parent_shift = m * (n - s);
    const int child_shift = m * (n - s - 1);
    ScaleGroups g;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        bool new_parent = i == 0 || floor_shift(cells[i], parent_shift) != floor_shift(cells[i - 1], parent_shift);
        bool new_child = i == 0 || floor_shift(cells[i], child_shift) != floor_shift(cells[i - 1], child_shift);
        if (new_parent) {
            g.counts.push_back(0);
            g.parent_begin.push_back(i);
            g.child_begin.emplace_back();
        }
        if (new_child) {
            g.counts.back() += 1;
            g.child_begin.back().push_back(i);
        }
    }
    return g;
}

}  // namespace

BranchingAnalysis branching_profile(const GridSet1D& u, int m, int n) {
    require_shape(u, m, n);
    if (u.empty()) throw Error("empty set has no branching profile");
    std::vector<CellIndex> cells(u.cells().begin(), u.cells().end());
    NonUniformReport report{m, n, {}, {}};
    BranchingProfile profile{m, n, {}};
    for (int s = 0; s < n; ++s) {
        ScaleGroups g = group_scale(cells, m, n, s);
        std::map<std::int64_t, std::int64_t> hist;
        for (std::int64_t c : g.counts) hist[c] += 1;
        if (hist.size() != 1) report.nonuniform_scales.push_back(s);
        profile.counts.push_back(hist.begin()->first);
        report.distribution.push_back(std::move(hist));
    }
    if (!report.nonuniform_scales.empty()) return report;
    return profile;
}

UniformSubset regularize_uniform_subset(const GridSet1D& u, int m, int n) {
    require_shape(u, m, n);
    if (u.empty()) throw Error("cannot regularize an empty set");
    std::vector<CellIndex> cells(u.cells().begin(), u.cells().end());
    for (int s = n - 1; s >= 0; --s) {
        ScaleGroups g = group_scale(cells, m, n, s);
        std::map<std::int64_t, std::int64_t> hist;
        for (std::int64_t c : g.counts) hist[c] += 1;
        std::int64_t mode = hist.begin()->first;
        for (const auto& [count, parents] : hist) {
            if (parents > hist[mode]) mode = count;
        }
        std::vector<CellIndex> kept;
        for (std::size_t p = 0; p < g.counts.size(); ++p) {
            if (g.counts[p] < mode) continue;
            std::size_t end = static_cast<std::size_t>(mode) < g.child_begin[p].size()
                                  ? g.child_begin[p][static_cast<std::size_t>(mode)]
                                  : (p + 1 < g.parent_begin.size() ? g.parent_begin[p + 1] : cells.size());
            kept.insert(kept.end(), cells.begin() + static_cast<std::ptrdiff_t>(g.parent_begin[p]),
                        cells.begin() + static_cast<std::ptrdiff_t>(end));
        }
        cells = std::move(kept);
    }
    UniformSubset out;
    out.retained_fraction = static_cast<double>(cells.size()) / static_cast<double>(u.size());
    out.subset = GridSet1D(u.level(), std::move(cells), u.bounds());
    auto analysis = branching_profile(out.subset, m, n);
    if (!std::holds_alternative<BranchingProfile>(analysis)) throw Error("regularization left a non-uniform set");
    out.profile = std::get<BranchingProfile>(analysis);
    return out;
}

}  // namespace fslab
