#pragma once

#include <vector>

#include "fslab/dyadic/grid_set.hpp"
#include "fslab/measures/delta_measure.hpp"

namespace fslab {

struct HypothesisOutcome {
    bool holds = false;
    double lhs = 0.0;  // |eta1 * eta2|_2
    double rhs = 0.0;  // delta^kappa |eta1|_2
};

/// Checks |eta1 * eta2|_2 >= delta^kappa |eta1|_2 for probability delta-measures on [-1, 1].
HypothesisOutcome inverse_hypothesis_check(const Measure1D& eta1, const Measure1D& eta2, double kappa);

struct GoodScaleParams {
    int m = 1;
    int n = 1;
    double rho = 0.5;
    double omega = 0.0;
    double alpha = 0.5;
    double c_alpha = 1.0;
};

struct GoodScaleOutcome {
    std::vector<int> good;          // scales s with max_I N(U n I at level m(s+1)) >= 2^((1-rho) alpha m + 3)
    double bound = 0.0;             // (1 - [omega/(alpha rho) + 5 C/(alpha rho m)]) N
    double bound_two = 0.0;         // same with 2 C in place of 5 C
    bool satisfied = false;         // good.size() >= bound
    bool satisfied_two = false;
    double measured_constant = 1.0; // regularity constant of mu_A found by the checker
    double mass_on_u = 0.0;
};

/// Throws when mu_A is not (alpha, C)-regular or mu_A(U) < delta^omega.
GoodScaleOutcome good_scale_count(const Measure1D& mu_a, const GridSet1D& u, const GoodScaleParams& params);

struct PigeonholeOutcome {
    int ladder_length = 0;           // n
    std::vector<int> ladder;         // levels l_0 > l_1 > ... > l_n
    std::vector<double> conditional_entropies;  // H(nu, D_{l_j} | D_{l_{j+1}}), j < n
    int chosen_index = 0;            // j
    Level fine;                      // l_j
    Level coarse;                    // l_{j+1}
    double tau_bar = 0.0;            // tau / (4 n)
    double entropy_threshold = 0.0;  // L tau_bar bits
    Measure1D restricted;            // renormalized measure after both restrictions
    double witness = 0.0;            // max over I, J of restricted_I(J)
    double target = 0.0;             // delta^(tau_bar / 4)
    double min_retained = 1.0;       // min over kept I of nu_I(mass kept inside I)
    double retained_mass = 0.0;      // nu(G)
};

/// Selects a branching scale on the dyadic ladder and restricts nu in two steps.
/// nu must be a (tau, C delta^-eta)-Frostman probability measure on [0, 1).
PigeonholeOutcome pigeonhole_branching_scale(const Measure1D& nu, double epsilon, double tau, double eta,
                                             double frostman_constant = 1.0);

}  // namespace fslab
