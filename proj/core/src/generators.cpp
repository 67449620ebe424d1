#include "fslab/regularity/generators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fslab/error.hpp"

namespace fslab {

SelfSimilarSet gen_self_similar(const SelfSimilarSpec& spec) {
    const int b = spec.branches;
    const int m = spec.contraction_level;
    if (b < 1) throw Error("self-similar set needs at least one branch");
    if (m < 1 || spec.depth < 0) throw Error("contraction level must be >= 1 and depth >= 0");
    Level level(m * spec.depth);
    if (m > 30) throw Error("contraction level too large");
    const std::int64_t slots = std::int64_t{1} << m;
    std::int64_t gap = spec.gap;
    if (b > 1 && gap == 0) gap = (slots - 1) / (b - 1);
    if (b > 1 && gap <= 0) throw Error("overlapping branches: gap must be positive");
    if (spec.offset < 0 || spec.offset + (b - 1) * gap >= slots) {
        throw Error("branches do not fit in 2^" + std::to_string(m) + " slots");
    }

    std::vector<CellIndex> cells{0};
    for (int s = 0; s < spec.depth; ++s) {
        std::vector<CellIndex> next;
        next.reserve(cells.size() * static_cast<std::size_t>(b));
        for (CellIndex c : cells) {
            for (int k = 0; k < b; ++k) next.push_back(c * slots + spec.offset + k * gap);
        }
        cells = std::move(next);
    }
    SelfSimilarSet out;
    out.set = GridSet1D(level, std::move(cells));
    out.measure = uniform_measure(out.set);
    out.nominal_dimension = std::log2(static_cast<double>(b)) / m;
    return out;
}

ApFamily gen_ap_family(std::int64_t n, double kappa) {
    if (n < 1 || (n & (n - 1)) != 0) throw Error("n must be a power of two");
    int log_n = 0;
    while ((std::int64_t{1} << log_n) < n) ++log_n;
    double ex = 2.0 * kappa * log_n;
    double rounded = std::round(ex);
    if (kappa < 0 || std::abs(ex - rounded) > 1e-9 || rounded > 2 * log_n) {
        throw Error("n^(2 kappa) must be an integer dividing n^2");
    }
    int log_e = static_cast<int>(rounded);
    Level level(2 * log_n);
    std::int64_t e_count = std::int64_t{1} << log_e;
    std::vector<CellIndex> a, e;
    for (std::int64_t k = 1; k <= n; ++k) a.push_back(k * n);
    for (std::int64_t k = 1; k <= e_count; ++k) e.push_back(k << (2 * log_n - log_e));
    return {GridSet1D(level, std::move(a)), GridSet1D(level, std::move(e))};
}

GridSet1D gen_random_cantor(Level level, double survival, std::uint64_t seed) {
    if (!(survival > 0.0) || survival > 1.0) throw Error("survival probability must be in (0, 1]");
    std::mt19937_64 rng(seed);
    auto keep = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < survival; };
    std::vector<CellIndex> cells{0};
    for (int l = 0; l < level.value(); ++l) {
        std::vector<CellIndex> next;
        next.reserve(cells.size() * 2);
        for (CellIndex c : cells) {
            for (CellIndex child : {2 * c, 2 * c + 1}) {
                if (keep()) next.push_back(child);
            }
        }
        cells = std::move(next);
    }
    return GridSet1D(level, std::move(cells));
}

}  // namespace fslab
