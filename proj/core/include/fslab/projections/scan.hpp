#pragma once

#include <cstdint>
#include <vector>

#include "fslab/content/content.hpp"
#include "fslab/dyadic/direction.hpp"
#include "fslab/measures/delta_measure.hpp"
#include "fslab/projections/window.hpp"

namespace fslab {

struct ScanRow {
    Direction theta;
    double hm_mass = 0.0;          // mu(B(1) n H_theta(K, M, window))
    bool flagged = false;          // hm_mass >= delta^eta
    std::int64_t covering = 0;     // N_delta(pi_theta(K))
    double dimension_ratio = 0.0;  // log N / log(1/delta)
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::int64_t threshold = 0;  // M = ceil(delta^-sigma)
    double mass_floor = 0.0;     // delta^eta
    GridSet1D exceptional_set;   // flagged theta cells on the level-q theta grid
    ContentValue exceptional_content;
};

struct ScanParams {
    double sigma = 0.0;
    double eta = 0.0;
    int theta_level = 8;
    double tau = 0.5;
    int jobs = 1;
};

/// Scans theta = p / 2^q, p < 2^q, for mu = normalized muA x muB and K = spt mu.
/// delta = window.r, which must be a power of two.
ScanResult hm_scan(const Measure1D& mu_a, const Measure1D& mu_b, const ScaleWindow& window, const ScanParams& params);

/// ceil(2^(sigma l)) with a relative guard against round-off at exact powers.
std::int64_t multiplicity_threshold(double sigma, int delta_level);

/// Mass of mu on cells whose grid point lies in [-s, s]^2.
double ball_mass(const Measure2D& mu, double s);

}  // namespace fslab
