#include "fslab/projections/probes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "fslab/error.hpp"
#include "fslab/measures/operations.hpp"
#include "fslab/projections/fiber.hpp"
#include "fslab/projections/multiplicity.hpp"
#include "fslab/projections/scan.hpp"

namespace fslab {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::optional<Square> intersect(const Square& a, const Square& b) {
    Square s{std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
    if (s.x0 > s.x1 || s.y0 > s.y1) return std::nullopt;
    return s;
}

Square centered(std::int64_t half) { return {-half, -half, half, half}; }

}  // namespace

SingleScaleResult single_scale_check(const Measure2D& mu, const GridSet1D& e, double sigma, double eta, double gamma,
                                     Level delta) {
    if (e.empty()) throw Error("single_scale_check needs a nonempty direction set");
    if (delta > mu.level()) throw Error("delta finer than the measure");
    const int l = delta.value();
    const int shift = mu.level().value() - l;
    SingleScaleResult out;
    out.threshold = std::exp2(-l * (sigma + eta - gamma));
    const double target = std::exp2(-eta * l) * (1.0 - 1e-12);

    // Cells by decreasing mass, ties in cell order.
    std::vector<std::size_t> order(mu.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto atoms = mu.atoms();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return atoms[a].second > atoms[b].second; });

    for (CellIndex p : e.cells()) {
        SingleScaleRow row;
        row.theta = Direction(p, e.level().value());
        std::map<CellIndex, double> tubes;
        for (const auto& [c, w] : atoms) tubes[floor_shift(project_point(c.x, c.y, row.theta), shift)] += w;
        row.full_cover = static_cast<std::int64_t>(tubes.size());

        std::vector<double> masses;
        for (const auto& t : tubes) masses.push_back(t.second);
        std::sort(masses.begin(), masses.end(), std::greater<>());
        double cum = 0.0;
        row.min_cover = -1;
        for (std::size_t i = 0; i < masses.size(); ++i) {
            cum += masses[i];
            if (cum >= target) {
                row.min_cover = static_cast<std::int64_t>(i + 1);
                break;
            }
        }

        std::vector<CellIndex> used;
        cum = 0.0;
        row.greedy_cover = -1;
        for (std::size_t i : order) {
            cum += atoms[i].second;
            used.push_back(floor_shift(project_point(atoms[i].first.x, atoms[i].first.y, row.theta), shift));
            if (cum >= target) {
                std::sort(used.begin(), used.end());
                row.greedy_cover = std::unique(used.begin(), used.end()) - used.begin();
                break;
            }
        }
        // With no heavy subset at all the condition holds vacuously.
        row.verified = row.min_cover < 0 || static_cast<double>(row.min_cover) >= out.threshold * (1.0 - 1e-12);
        if (row.verified && !out.witness) out.witness = row.theta;
        out.rows.push_back(row);
    }
    return out;
}

FiberDecomposition fiber_decomposition_check(const GridSet2D& k, const Direction& theta, Level r, Level R) {
    if (r < R) throw Error("fiber decomposition needs r finer than R");
    if (r > k.level()) throw Error("scale r finer than the set");
    const int L = k.level().value();
    const std::int64_t rho = std::int64_t{1} << (L - r.value());
    const std::int64_t rho_big = std::int64_t{1} << (L - R.value());
    const std::int64_t unit = std::int64_t{1} << L;
    FiberGeometry g(theta);
    const std::int64_t step = g.key(rho, 0);  // key spacing of the r-grid of t values

    std::vector<Square> small_b2, small_b3, big_b3;
    for (const Cell2& c : k.cells()) {
        if (auto s = intersect(thickened(c, rho), centered(2 * unit))) small_b2.push_back(*s);
        if (auto s = intersect(thickened(c, rho), centered(3 * unit))) small_b3.push_back(*s);
        if (auto s = intersect(thickened(c, rho_big), centered(3 * unit))) big_b3.push_back(*s);
    }
    FiberDecomposition out;
    if (small_b2.empty()) return out;

    std::int64_t kmin = INT64_MAX, kmax = INT64_MIN;
    for (const Square& s : small_b2) {
        kmin = std::min(kmin, g.key_lo(s));
        kmax = std::max(kmax, g.key_hi(s));
    }
    std::vector<std::int64_t> keys;
    for (std::int64_t t = ceil_div(kmin, step); t <= floor_div(kmax, step); ++t) keys.push_back(t * step);

    FiberTable f_r = build_fibers(small_b2, g, keys);
    FiberTable f_r3 = build_fibers(small_b3, g, keys);
    FiberTable f_big = build_fibers(big_b3, g, keys);

    // Closed level-R dyadic squares meeting K_r n B(2).
    std::vector<std::pair<std::int64_t, std::int64_t>> cover;
    for (const Square& s : small_b2) {
        for (std::int64_t a = ceil_div(s.x0, rho_big) - 1; a <= floor_div(s.x1, rho_big); ++a) {
            for (std::int64_t b = ceil_div(s.y0, rho_big) - 1; b <= floor_div(s.y1, rho_big); ++b) cover.emplace_back(a, b);
        }
    }
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    out.cover_size = static_cast<std::int64_t>(cover.size());

    const std::size_t n = f_r.keys.size();
    std::vector<std::int64_t> sum(n, 0), touched(n, 0);
    const std::int64_t len = g.ball_length(rho);
    for (auto [a, b] : cover) {
        Square sq{a * rho_big, b * rho_big, (a + 1) * rho_big, (b + 1) * rho_big};
        std::int64_t hi = g.key_hi(sq);
        for (auto it = std::lower_bound(f_r.keys.begin(), f_r.keys.end(), g.key_lo(sq)); it != f_r.keys.end() && *it <= hi; ++it) {
            auto i = static_cast<std::size_t>(it - f_r.keys.begin());
            std::int64_t cnt = cover_count(f_r3.merged[i], g.clip(sq, *it), len);
            if (cnt > 0) {
                sum[i] += cnt;
                touched[i] += 1;
            }
        }
    }
    const std::int64_t len_big = g.ball_length(rho_big);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t fr = cover_count(f_r.merged[i], Span::whole(), len);
        if (fr == 0) continue;
        ++out.fibers;
        out.c1 = std::max(out.c1, static_cast<double>(fr) / static_cast<double>(sum[i]));
        std::int64_t fbig = cover_count(f_big.merged[i], Span::whole(), len_big);
        if (touched[i] > 0) out.c2 = std::max(out.c2, static_cast<double>(touched[i]) / static_cast<double>(fbig));
    }
    return out;
}

Prop3Outcome prop3_probe(const Measure2D& mu, const Direction& theta, const Prop3Params& prm) {
    if (!(prm.M >= 1.0) || prm.N < prm.M) throw Error("prop3_probe needs 1 <= M <= N");
    if (prm.r < prm.R) throw Error("prop3_probe needs r finer than R");
    const GridSet2D k = support(mu);
    const int r = prm.r.value();
    const int R = prm.R.value();
    auto hm_mass = [&](double threshold, const ScaleWindow& w, double ball) {
        GridSet2D h = high_multiplicity_set(k, theta, threshold, w);
        double m = 0.0;
        const auto lim = static_cast<std::int64_t>(std::floor(ball * std::ldexp(1.0, mu.level().value())));
        for (const auto& [c, wt] : mu.atoms()) {
            if (std::abs(c.x) <= lim && std::abs(c.y) <= lim && h.contains(c)) m += wt;
        }
        return m;
    };
    Prop3Outcome out;
    out.lhs = hm_mass(prm.C * prm.N, ScaleWindow(Dyadic::power(r), Dyadic{1, 0}), 1.0);
    out.rhs1 = hm_mass(prm.c * prm.M, ScaleWindow(Dyadic::make(4, R), Dyadic{5, 0}), 1.0);
    out.rhs2 = prm.C * prm.c_gamma * prm.c_gamma *
               hm_mass(prm.c * prm.N / prm.M, ScaleWindow(Dyadic::make(4, r), Dyadic::make(7, R)), 4.0);
    out.holds = out.lhs <= (out.rhs1 + out.rhs2) * (1.0 + 1e-12);
    return out;
}

}  // namespace fslab
