#include "fslab/projections/scan.hpp"

#include <cmath>
#include <string>

#include "fslab/error.hpp"
#include "fslab/projections/multiplicity.hpp"
#include "fslab/projections/projection.hpp"
#include "fslab/util/parallel.hpp"

namespace fslab {

std::int64_t multiplicity_threshold(double sigma, int delta_level) {
    double x = std::exp2(sigma * delta_level);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x * (1.0 - 1e-12))));
}

double ball_mass(const Measure2D& mu, double s) {
    auto lim = static_cast<std::int64_t>(std::floor(s * std::ldexp(1.0, mu.level().value())));
    double m = 0.0;
    for (const auto& [c, w] : mu.atoms()) {
        if (c.x >= -lim && c.x <= lim && c.y >= -lim && c.y <= lim) m += w;
    }
    return m;
}

ScanResult hm_scan(const Measure1D& mu_a, const Measure1D& mu_b, const ScaleWindow& window, const ScanParams& params) {
    if (params.theta_level < 0 || params.theta_level > kMaxDirectionLevel) throw Error("empty or invalid theta grid");
    auto delta_level = window.r_level();
    if (!delta_level) throw Error("scan needs delta = window r to be a power of two");
    if (*delta_level > mu_a.level().value()) throw Error("delta finer than the measures");
    if (mu_a.empty() || mu_b.empty()) throw Error("scan of an empty measure");

    const Measure2D mu = product_measure(mu_a, mu_b).normalized();
    const GridSet2D k = support(mu);
    const GridSet2D k_product(support(mu_a), support(mu_b));
    const Level level = mu.level();
    const auto lim = std::int64_t{1} << level.value();
    std::vector<double> weight_in_ball;
    for (const auto& [c, w] : mu.atoms()) {
        bool inside = c.x >= -lim && c.x <= lim && c.y >= -lim && c.y <= lim;
        weight_in_ball.push_back(inside ? w : 0.0);
    }

    ScanResult out;
    out.threshold = multiplicity_threshold(params.sigma, *delta_level);
    out.mass_floor = std::exp2(-params.eta * *delta_level);
    const std::size_t n = std::size_t{1} << params.theta_level;
    out.rows.resize(n);
    parallel_for(n, params.jobs, [&](std::size_t p) {
        ScanRow row;
        row.theta = Direction(static_cast<std::int64_t>(p), params.theta_level);
        if (out.threshold <= 1) {
            for (double w : weight_in_ball) row.hm_mass += w;
        } else {
            auto m = multiplicities(k, row.theta, window);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] >= out.threshold) row.hm_mass += weight_in_ball[i];
            }
        }
        row.flagged = row.hm_mass >= out.mass_floor;
        row.covering = static_cast<std::int64_t>(project_set(k_product, row.theta, Level(*delta_level)).size());
        row.dimension_ratio = *delta_level == 0 ? 0.0 : std::log2(static_cast<double>(row.covering)) / *delta_level;
        out.rows[p] = row;
    });

    std::vector<CellIndex> flagged;
    for (std::size_t p = 0; p < n; ++p) {
        if (out.rows[p].flagged) flagged.push_back(static_cast<CellIndex>(p));
    }
    Level q(params.theta_level);
    out.exceptional_set = GridSet1D(q, std::move(flagged), IndexRange{0, static_cast<CellIndex>(n)});
    out.exceptional_content = dyadic_content(out.exceptional_set, Exponent(params.tau));
    return out;
}

}  // namespace fslab
