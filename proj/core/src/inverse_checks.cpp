#include "fslab/inverse/checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "fslab/error.hpp"
#include "fslab/measures/operations.hpp"
#include "fslab/regularity/check.hpp"

namespace fslab {

namespace {

void require_in_unit_ball(const Measure1D& mu, const char* name) {
    const CellIndex lim = CellIndex{1} << mu.level().value();
    for (const auto& a : mu.atoms()) {
        if (a.first < -lim || a.first > lim) throw Error(std::string(name) + " has support outside [-1, 1]");
    }
}

// Masses of level-`level` ancestors, sorted by cell.
std::vector<std::pair<CellIndex, double>> cell_masses(const Measure1D& mu, int level) {
    const int shift = mu.level().value() - level;
    std::vector<std::pair<CellIndex, double>> out;
    for (const auto& [c, w] : mu.atoms()) {
        CellIndex a = floor_shift(c, shift);
        if (!out.empty() && out.back().first == a) {
            out.back().second += w;
        } else {
            out.emplace_back(a, w);
        }
    }
    return out;
}

}  // namespace

HypothesisOutcome inverse_hypothesis_check(const Measure1D& eta1, const Measure1D& eta2, double kappa) {
    if (eta1.level() != eta2.level()) throw Error("hypothesis check needs measures at one level");
    if (!eta1.is_probability(1e-9) || !eta2.is_probability(1e-9)) throw Error("hypothesis check needs probability measures");
    require_in_unit_ball(eta1, "eta1");
    require_in_unit_ball(eta2, "eta2");
    HypothesisOutcome out;
    out.lhs = l2_norm(convolve(eta1, eta2));
    out.rhs = std::exp2(-kappa * eta1.level().value()) * l2_norm(eta1);
    out.holds = out.lhs >= out.rhs;
    return out;
}

GoodScaleOutcome good_scale_count(const Measure1D& mu_a, const GridSet1D& u, const GoodScaleParams& prm) {
    const int L = prm.m * prm.n;
    if (mu_a.level().value() != L || u.level().value() != L) throw Error("good_scale_count needs level m N");
    if (!(prm.alpha > 0.0) || !(prm.rho > 0.0)) throw Error("good_scale_count needs alpha, rho > 0");
    GoodScaleOutcome out;
    const GridSet1D k = support(mu_a);
    const auto scales = all_scale_pairs(k.level());
    RegularityParams rp(prm.alpha, std::max(1.0, prm.c_alpha));
    for (RegularityMode mode : {RegularityMode::SetUpper, RegularityMode::FrostmanUpper}) {
        RegularityReport r = check_regularity(k, mu_a, rp, mode, scales);
        out.measured_constant = std::max(out.measured_constant, r.worst_ratio);
        if (!r.satisfied) {
            throw Error("measure is not (" + std::to_string(prm.alpha) + ", " + std::to_string(prm.c_alpha) +
                        ")-regular: ratio " + std::to_string(r.worst_ratio) + " at cell " +
                        std::to_string(r.witness.center.x) + ", scales (" + std::to_string(r.witness.r_level) + ", " +
                        std::to_string(r.witness.R_level) + ")");
        }
    }
    out.mass_on_u = mass_on(mu_a, u);
    if (out.mass_on_u < std::exp2(-prm.omega * L) * (1.0 - 1e-12)) throw Error("mu_A(U) is below delta^omega");

    const double need = std::exp2((1.0 - prm.rho) * prm.alpha * prm.m + 3.0);
    const auto cells = u.cells();
    for (int s = 0; s < prm.n; ++s) {
        const int parent_shift = prm.m * (prm.n - s);
        const int child_shift = prm.m * (prm.n - s - 1);
        std::int64_t best = 0, current = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == 0 || floor_shift(cells[i], parent_shift) != floor_shift(cells[i - 1], parent_shift)) current = 0;
            if (i == 0 || floor_shift(cells[i], child_shift) != floor_shift(cells[i - 1], child_shift)) ++current;
            best = std::max(best, current);
        }
        if (static_cast<double>(best) >= need) out.good.push_back(s);
    }
    const double ar = prm.alpha * prm.rho;
    out.bound = (1.0 - (prm.omega / ar + 5.0 * prm.c_alpha / (ar * prm.m))) * prm.n;
    out.bound_two = (1.0 - (prm.omega / ar + 2.0 * prm.c_alpha / (ar * prm.m))) * prm.n;
    out.satisfied = static_cast<double>(out.good.size()) >= out.bound;
    out.satisfied_two = static_cast<double>(out.good.size()) >= out.bound_two;
    return out;
}

PigeonholeOutcome pigeonhole_branching_scale(const Measure1D& nu, double epsilon, double tau, double eta,
                                             double frostman_constant) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error("epsilon must lie in (0, 1]");
    if (!(tau > 0.0 && tau <= 1.0)) throw Error("tau must lie in (0, 1]");
    if (!nu.is_probability(1e-9)) throw Error("pigeonholing needs a probability measure");
    const int L = nu.level().value();
    const CellIndex size = CellIndex{1} << L;
    for (const auto& a : nu.atoms()) {
        if (a.first < 0 || a.first >= size) throw Error("pigeonholing needs a measure on [0, 1)");
    }
    // Frostman precondition over all dyadic intervals.
    const double allowance = frostman_constant * std::exp2(eta * L) * (1.0 + 1e-12);
    for (int l = 0; l <= L; ++l) {
        for (const auto& [c, w] : cell_masses(nu, l)) {
            if (w / std::exp2(-tau * l) > allowance) {
                throw Error("not a (tau, C delta^-eta)-Frostman measure: interval " + std::to_string(c) + " at level " +
                            std::to_string(l));
            }
        }
    }

    PigeonholeOutcome out;
    int n = 1;
    while (1.0 / (2.0 * std::pow(1.0 + epsilon, n - 1)) > tau / 4.0) ++n;
    out.ladder_length = n;
    for (int j = 0; j <= n; ++j) {
        double e = 0.5 * std::pow(1.0 + epsilon, -(j - 1));
        out.ladder.push_back(std::clamp(static_cast<int>(std::lround(L * e)), 0, L));
    }
    for (int j = 0; j < n; ++j) {
        out.conditional_entropies.push_back(conditional_entropy(nu, Level(out.ladder[j]), Level(out.ladder[j + 1])));
    }
    out.chosen_index = static_cast<int>(std::max_element(out.conditional_entropies.begin(), out.conditional_entropies.end()) -
                                        out.conditional_entropies.begin());
    out.tau_bar = tau / (4.0 * n);
    out.entropy_threshold = L * out.tau_bar;
    if (out.conditional_entropies[out.chosen_index] < out.entropy_threshold - 1e-12) {
        throw Error("Frostman precondition too weak at this resolution");
    }
    const int fine = out.ladder[out.chosen_index];
    const int coarse = out.ladder[out.chosen_index + 1];
    out.fine = Level(fine);
    out.coarse = Level(coarse);
    out.target = std::exp2(-L * out.tau_bar / 4.0);

    const auto fine_masses = cell_masses(nu, fine);
    const int gap = fine - coarse;
    std::vector<CellIndex> kept;
    bool any = false;
    for (std::size_t i = 0; i < fine_masses.size();) {
        std::size_t j = i;
        const CellIndex parent = floor_shift(fine_masses[i].first, gap);
        double mass_i = 0.0;
        while (j < fine_masses.size() && floor_shift(fine_masses[j].first, gap) == parent) mass_i += fine_masses[j++].second;
        double h = 0.0;
        for (std::size_t t = i; t < j; ++t) {
            double p = fine_masses[t].second / mass_i;
            h -= p * std::log2(p);
        }
        if (h >= L * out.tau_bar / 2.0) {
            double m_i = 0.0;
            std::vector<CellIndex> local;
            for (std::size_t t = i; t < j; ++t) {
                double p = fine_masses[t].second / mass_i;
                if (p < out.target) {
                    m_i += p;
                    local.push_back(fine_masses[t].first);
                }
            }
            if (m_i > 0.0) {
                any = true;
                out.min_retained = std::min(out.min_retained, m_i);
                kept.insert(kept.end(), local.begin(), local.end());
            }
        }
        i = j;
    }
    if (!any) throw Error("Frostman precondition too weak at this resolution");
    GridSet1D g(Level(fine), std::move(kept));
    out.retained_mass = mass_on(nu, g);
    out.restricted = restrict_normalize(nu, g);

    const auto restricted_fine = cell_masses(out.restricted, fine);
    for (std::size_t i = 0; i < restricted_fine.size();) {
        std::size_t j = i;
        const CellIndex parent = floor_shift(restricted_fine[i].first, gap);
        double mass_i = 0.0;
        while (j < restricted_fine.size() && floor_shift(restricted_fine[j].first, gap) == parent) {
            mass_i += restricted_fine[j++].second;
        }
        for (std::size_t t = i; t < j; ++t) out.witness = std::max(out.witness, restricted_fine[t].second / mass_i);
        i = j;
    }
    return out;
}

}  // namespace fslab
