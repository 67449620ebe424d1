#include "fslab/regularity/check.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "fslab/error.hpp"

namespace fslab {

RegularityParams::RegularityParams(double exponent_, double constant_) : exponent(exponent_), constant(constant_) {
    if (!(exponent >= 0.0 && exponent <= 2.0)) throw Error("regularity exponent must lie in [0, 2]");
    if (!(constant >= 1.0) || !std::isfinite(constant)) throw Error("regularity constant must be finite and >= 1");
}

std::vector<ScalePair> all_scale_pairs(Level level) {
    std::vector<ScalePair> out;
    for (int r = 0; r <= level.value(); ++r) {
        for (int R = 0; R <= r; ++R) out.push_back({Level(r), Level(R)});
    }
    return out;
}

namespace {

void validate(const std::vector<ScalePair>& scales, Level level) {
    for (const ScalePair& p : scales) {
        if (p.R > p.r) throw Error("scale pair needs r finer than R");
        if (p.r > level) throw Error("scale r finer than the set's level");
    }
}

// Keeps the largest ratio; ties keep the first witness.
struct Worst {
    RegularityReport report;
    bool seen = false;
    void offer(double ratio, Cell2 center, const ScalePair& p) {
        if (!seen || ratio > report.worst_ratio) {
            report.worst_ratio = ratio;
            report.witness = {center, p.r.value(), p.R.value()};
            seen = true;
        }
    }
    RegularityReport finish(double constant) {
        report.satisfied = report.worst_ratio <= constant * (1.0 + 1e-12);
        return report;
    }
};

// Distinct level-r ancestors among sorted cells[a, b).
class DistinctAncestors {
public:
    DistinctAncestors(std::span<const CellIndex> cells, int shift) : prefix_(cells.size() + 1, 0) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            bool fresh = i == 0 || floor_shift(cells[i], shift) != floor_shift(cells[i - 1], shift);
            prefix_[i + 1] = prefix_[i] + (fresh ? 1 : 0);
        }
    }
    std::int64_t count(std::size_t a, std::size_t b) const {
        if (a >= b) return 0;
        return prefix_[b] - prefix_[a + 1] + 1;
    }

private:
    std::vector<std::int64_t> prefix_;
};

}  // namespace

RegularityReport check_regularity(const GridSet1D& set, const Measure1D& mu, const RegularityParams& params,
                                  RegularityMode mode, const std::vector<ScalePair>& scales, BallShape shape) {
    if (set.empty()) throw Error("regularity check of an empty subject");
    validate(scales, set.level());
    const int L = set.level().value();
    const auto cells = set.cells();
    Worst worst;

    if (mode == RegularityMode::SetUpper) {
        std::optional<DistinctAncestors> distinct_at;
        int distinct_level = -1;
        for (const ScalePair& p : scales) {
            if (p.r.value() != distinct_level) {
                distinct_at.emplace(cells, L - p.r.value());
                distinct_level = p.r.value();
            }
            const DistinctAncestors& distinct = *distinct_at;
            double scale = std::exp2(params.exponent * (p.r.value() - p.R.value()));
            int shift = L - p.R.value();
            CellIndex radius = CellIndex{1} << shift;
            if (shape == BallShape::DyadicCell) {
                // Every center in one dyadic ball sees the same ratio; the first one is the witness.
                for (std::size_t a = 0; a < cells.size();) {
                    CellIndex hi = (floor_shift(cells[a], shift) << shift) + radius;
                    auto b = static_cast<std::size_t>(std::lower_bound(cells.begin() + static_cast<std::ptrdiff_t>(a),
                                                                       cells.end(), hi) -
                                                      cells.begin());
                    worst.offer(static_cast<double>(distinct.count(a, b)) / scale, {cells[a], 0}, p);
                    a = b;
                }
                continue;
            }
            for (CellIndex x : cells) {
                CellIndex lo = x - radius;  // ball as the half-open index range [lo, hi)
                CellIndex hi = x + radius + 1;
                auto a = static_cast<std::size_t>(std::lower_bound(cells.begin(), cells.end(), lo) - cells.begin());
                auto b = static_cast<std::size_t>(std::lower_bound(cells.begin(), cells.end(), hi) - cells.begin());
                worst.offer(static_cast<double>(distinct.count(a, b)) / scale, {x, 0}, p);
            }
        }
        return worst.finish(params.constant);
    }

    std::vector<CellIndex> pos;
    std::vector<double> prefix{0.0};
    for (const auto& [c, w] : mu.atoms()) {
        pos.push_back(c);
        prefix.push_back(prefix.back() + w);
    }
    if (mu.level() != set.level()) throw Error("measure and set levels differ");
    std::vector<char> done(static_cast<std::size_t>(L) + 1, 0);
    for (const ScalePair& p : scales) {
        // R plays no role here; later pairs with a seen r only repeat ratios.
        if (done[static_cast<std::size_t>(p.r.value())]) continue;
        done[static_cast<std::size_t>(p.r.value())] = 1;
        int shift = L - p.r.value();
        CellIndex radius = CellIndex{1} << shift;
        double scale = std::exp2(-params.exponent * p.r.value());
        CellIndex previous_ball = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            CellIndex x = cells[i];
            CellIndex lo, hi;
            if (shape == BallShape::DyadicCell) {
                lo = floor_shift(x, shift) << shift;
                if (i > 0 && lo == previous_ball) continue;
                previous_ball = lo;
                hi = lo + radius;
            } else {
                lo = x - radius;
                hi = x + radius + 1;
            }
            auto a = std::lower_bound(pos.begin(), pos.end(), lo) - pos.begin();
            auto b = std::lower_bound(pos.begin(), pos.end(), hi) - pos.begin();
            worst.offer((prefix[b] - prefix[a]) / scale, {x, 0}, p);
        }
    }
    return worst.finish(params.constant);
}

RegularityReport check_regularity(const GridSet2D& set, const Measure2D& mu, const RegularityParams& params,
                                  RegularityMode mode, const std::vector<ScalePair>& scales, BallShape shape) {
    if (set.empty()) throw Error("regularity check of an empty subject");
    validate(scales, set.level());
    if (mode == RegularityMode::FrostmanUpper && mu.level() != set.level()) throw Error("measure and set levels differ");
    const int L = set.level().value();
    const std::vector<Cell2> cells = set.cells();
    Worst worst;
    std::vector<Cell2> ancestors;
    std::vector<char> done(static_cast<std::size_t>(L) + 1, 0);
    for (const ScalePair& p : scales) {
        if (mode == RegularityMode::FrostmanUpper) {
            if (done[static_cast<std::size_t>(p.r.value())]) continue;
            done[static_cast<std::size_t>(p.r.value())] = 1;
        }
        int ball_level = mode == RegularityMode::SetUpper ? p.R.value() : p.r.value();
        int shift = L - ball_level;
        CellIndex radius = CellIndex{1} << shift;
        int rshift = L - p.r.value();
        double scale = mode == RegularityMode::SetUpper ? std::exp2(params.exponent * (p.r.value() - p.R.value()))
                                                        : std::exp2(-params.exponent * p.r.value());
        for (const Cell2& x : cells) {
            Cell2 lo, hi;  // inclusive corners
            if (shape == BallShape::DyadicCell) {
                lo = {floor_shift(x.x, shift) << shift, floor_shift(x.y, shift) << shift};
                hi = {lo.x + radius - 1, lo.y + radius - 1};
            } else {
                lo = {x.x - radius, x.y - radius};
                hi = {x.x + radius, x.y + radius};
            }
            double value = 0.0;
            if (mode == RegularityMode::SetUpper) {
                ancestors.clear();
                auto it = std::lower_bound(cells.begin(), cells.end(), Cell2{lo.x, lo.y});
                for (; it != cells.end() && it->x <= hi.x; ++it) {
                    if (it->y >= lo.y && it->y <= hi.y) {
                        ancestors.push_back({floor_shift(it->x, rshift), floor_shift(it->y, rshift)});
                    }
                }
                std::sort(ancestors.begin(), ancestors.end());
                value = static_cast<double>(std::unique(ancestors.begin(), ancestors.end()) - ancestors.begin());
            } else {
                auto atoms = mu.atoms();
                auto it = std::lower_bound(atoms.begin(), atoms.end(), lo,
                                           [](const auto& a, const Cell2& k) { return a.first < k; });
                for (; it != atoms.end() && it->first.x <= hi.x; ++it) {
                    if (it->first.y >= lo.y && it->first.y <= hi.y) value += it->second;
                }
            }
            worst.offer(value / scale, x, p);
        }
    }
    return worst.finish(params.constant);
}

double regularity_constant(const GridSet1D& set, const Measure1D& mu, double exponent, BallShape shape) {
    auto scales = all_scale_pairs(set.level());
    RegularityParams params(exponent, 1.0);
    double a = check_regularity(set, mu, params, RegularityMode::SetUpper, scales, shape).worst_ratio;
    double b = check_regularity(set, mu, params, RegularityMode::FrostmanUpper, scales, shape).worst_ratio;
    return std::max({1.0, a, b});
}

}  // namespace fslab
