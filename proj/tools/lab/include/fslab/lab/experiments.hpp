#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"

#include "fslab/dyadic/grid_set.hpp"
#include "fslab/lab/config.hpp"
#include "fslab/lab/table.hpp"
#include "fslab/measures/delta_measure.hpp"

namespace fslab::lab {

struct ExperimentResult {
    std::string kind;
    ResultTable table;
    bool passed = true;  // false when an asserted bound is violated
    nlohmann::json summary = nlohmann::json::object();
};

/// Validates and dispatches on config.kind().
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes the CSV to `csv_path` and the sidecar next to it with extension .json.
void write_outputs(const ExperimentResult& result, const ExperimentConfig& config, const std::filesystem::path& csv_path,
                   double wall_seconds);

nlohmann::json sidecar(const ExperimentResult& result, const ExperimentConfig& config, double wall_seconds);

/// Least-squares slope of log2 N(S, level) against level; needs at least 3 levels.
double dimension_estimate(const GridSet1D& s, std::span<const int> levels);

/// A set and its natural measure described by "generator" plus generator keys.
struct GeneratedSet {
    GridSet1D set;
    Measure1D measure;
    std::string description;
};

/// generator = self-similar (branches, contraction, depth, gap, offset) | ap (n, kappa, part = a | e)
/// | cantor (level, survival, seed).
GeneratedSet generate_set(const ExperimentConfig& config);

/// Cell listing of a generated set.
ResultTable generated_set_table(const GeneratedSet& g);

/// Covering numbers over a level ladder and the fitted slope.
ExperimentResult dimension_table(const ExperimentConfig& config);

}  // namespace fslab::lab
