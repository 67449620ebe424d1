#include "fslab/lab/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fslab/dyadic/ops.hpp"
#include "fslab/regularity/generators.hpp"
#include "kinds.hpp"

#ifndef FSLAB_VERSION
#define FSLAB_VERSION "unknown"
#endif

namespace fslab::lab {

namespace detail {

int jobs_of(const ExperimentConfig& c) { return static_cast<int>(c.integer("jobs", 0)); }

}  // namespace detail

namespace {

ExperimentResult generated(const ExperimentConfig& config) {
    GeneratedSet g = generate_set(config);
    ExperimentResult r{"gen", generated_set_table(g), true, nlohmann::json::object()};
    r.summary["description"] = g.description;
    r.summary["level"] = g.set.level().value();
    r.summary["cells"] = g.set.size();
    return r;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate(config);
    const std::string& k = config.kind();
    if (k == "ap-counterexample") return detail::ap_counterexample(config);
    if (k == "direction-scan") return detail::direction_scan(config);
    if (k == "content-duality") return detail::content_duality(config);
    if (k == "branching-audit") return detail::branching_audit(config);
    if (k == "inverse-probe") return detail::inverse_probe(config);
    if (k == "prop3-probe") return detail::prop3_experiment(config);
    if (k == "gen") return generated(config);
    if (k == "dim") return dimension_table(config);
    throw ConfigError("field 'kind': unknown experiment '" + k + "'");
}

nlohmann::json sidecar(const ExperimentResult& result, const ExperimentConfig& config, double wall_seconds) {
    nlohmann::json j;
    j["kind"] = result.kind;
    nlohmann::json cfg = nlohmann::json::object();
    cfg["kind"] = config.kind();
    for (const auto& [key, value] : config.values()) cfg[key] = value;
    j["config"] = cfg;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(config.hash()));
    j["config_hash"] = hex;
    j["version"] = FSLAB_VERSION;
    j["max_level"] = max_level();
    j["wall_time_seconds"] = wall_seconds;
    j["passed"] = result.passed;
    j["summary"] = result.summary;
    j["columns"] = result.table.columns();
    j["rows"] = result.table.rows().size();
    return j;
}

void write_outputs(const ExperimentResult& result, const ExperimentConfig& config, const std::filesystem::path& csv_path,
                   double wall_seconds) {
    if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw Error("cannot write " + csv_path.string());
        result.table.write_csv(out);
    }
    std::filesystem::path json_path = csv_path;
    json_path.replace_extension(".json");
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw Error("cannot write " + json_path.string());
    out << sidecar(result, config, wall_seconds).dump(2) << '\n';
}

double dimension_estimate(const GridSet1D& s, std::span<const int> levels) {
    if (levels.size() < 3) throw Error("dimension_estimate needs at least 3 levels");
    if (s.empty()) throw Error("dimension_estimate of an empty set");
    double n = static_cast<double>(levels.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int l : levels) {
        if (l < 0 || l > s.level().value()) throw Error("ladder level outside [0, set level]");
        double x = l;
        double y = std::log2(static_cast<double>(covering_number(s, Level(l))));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double den = n * sxx - sx * sx;
    if (den == 0.0) throw Error("dimension_estimate needs distinct levels");
    return (n * sxy - sx * sy) / den;
}

GeneratedSet generate_set(const ExperimentConfig& config) {
    std::string gen = config.text("generator", "self-similar");
    if (gen == "self-similar") {
        SelfSimilarSpec spec{.branches = static_cast<int>(config.integer("branches", 4)),
                             .gap = static_cast<int>(config.integer("gap", 0)),
                             .contraction_level = static_cast<int>(config.integer("contraction", 4)),
                             .depth = static_cast<int>(config.integer("depth", 4)),
                             .offset = static_cast<int>(config.integer("offset", 0))};
        SelfSimilarSet s = gen_self_similar(spec);
        return {s.set, s.measure,
                "self-similar b=" + std::to_string(spec.branches) + " m=" + std::to_string(spec.contraction_level) +
                    " depth=" + std::to_string(spec.depth)};
    }
    if (gen == "ap") {
        std::int64_t n = config.integer("n", 16);
        double kappa = config.real("kappa", 0.25);
        ApFamily f = gen_ap_family(n, kappa);
        std::string part = config.text("part", "a");
        if (part != "a" && part != "e") throw ConfigError("field 'part': expected a or e");
        const GridSet1D& s = part == "a" ? f.a : f.e;
        return {s, uniform_measure(s), "ap n=" + std::to_string(n) + " part=" + part};
    }
    if (gen == "cantor") {
        Level level(static_cast<int>(config.integer("level", 12)));
        GridSet1D s = gen_random_cantor(level, config.real("survival", 0.75), config.seed());
        Measure1D mu = s.empty() ? Measure1D(level, {}) : uniform_measure(s);
        return {s, mu, "cantor level=" + std::to_string(level.value())};
    }
    throw ConfigError("field 'generator': expected self-similar, ap or cantor, got '" + gen + "'");
}

ResultTable generated_set_table(const GeneratedSet& g) {
    ResultTable t({"cell", "left_endpoint", "weight"});
    double mesh = g.set.level().mesh();
    for (CellIndex k : g.set.cells()) {
        t.add_row({std::int64_t{k}, static_cast<double>(k) * mesh, g.measure.mass_of(k)});
    }
    return t;
}

ExperimentResult dimension_table(const ExperimentConfig& config) {
    GeneratedSet g = generate_set(config);
    int top = g.set.level().value();
    std::vector<int> levels;
    if (config.has("levels")) {
        for (auto l : config.integers("levels", {})) levels.push_back(static_cast<int>(l));
    } else {
        int step = static_cast<int>(config.integer("step", config.text("generator", "self-similar") == "self-similar"
                                                               ? config.integer("contraction", 4)
                                                               : 1));
        if (step < 1) throw ConfigError("field 'step': must be >= 1");
        for (int l = 0; l <= top; l += step) levels.push_back(l);
    }
    double slope = dimension_estimate(g.set, levels);
    ResultTable t({"level", "covering_number", "log2_covering", "slope"});
    for (int l : levels) {
        auto n = covering_number(g.set, Level(l));
        t.add_row({std::int64_t{l}, static_cast<std::int64_t>(n), std::log2(static_cast<double>(n)), slope});
    }
    ExperimentResult r{"dim", std::move(t), true, nlohmann::json::object()};
    r.summary["description"] = g.description;
    r.summary["slope"] = slope;
    return r;
}

}  // namespace fslab::lab
