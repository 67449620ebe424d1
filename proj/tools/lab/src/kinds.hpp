#pragma once

#include <cstdint>
#include <random>

#include "fslab/lab/experiments.hpp"

namespace fslab::lab::detail {

ExperimentResult ap_counterexample(const ExperimentConfig& c);
ExperimentResult direction_scan(const ExperimentConfig& c);
ExperimentResult content_duality(const ExperimentConfig& c);
ExperimentResult branching_audit(const ExperimentConfig& c);
ExperimentResult inverse_probe(const ExperimentConfig& c);
ExperimentResult prop3_experiment(const ExperimentConfig& c);

int jobs_of(const ExperimentConfig& c);

/// Uniform integer in [0, n) from a 64-bit generator, independent of the standard library's distributions.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }
/// Uniform real in [0, 1) with 53 random bits.
inline double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace fslab::lab::detail
