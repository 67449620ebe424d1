#include "fslab/lab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fslab/dyadic/direction.hpp"
#include "fslab/dyadic/level.hpp"

namespace fslab::lab {

namespace {

enum class Type { Int, Real, Bool, Text, IntList, RealList };

struct Field {
    const char* name;
    Type type;
};

const std::vector<Field>& common_fields() {
    static const std::vector<Field> f = {{"seed", Type::Int}, {"jobs", Type::Int}, {"out", Type::Text}};
    return f;
}

const std::vector<Field>& generator_fields() {
    static const std::vector<Field> f = {
        {"generator", Type::Text}, {"branches", Type::Int}, {"contraction", Type::Int}, {"depth", Type::Int},
        {"gap", Type::Int},        {"offset", Type::Int},   {"n", Type::Int},           {"kappa", Type::Real},
        {"part", Type::Text},      {"level", Type::Int},    {"survival", Type::Real},
    };
    return f;
}

const std::map<std::string, std::vector<Field>, std::less<>>& schemas() {
    static const std::map<std::string, std::vector<Field>, std::less<>> s = [] {
        std::map<std::string, std::vector<Field>, std::less<>> m;
        m["ap-counterexample"] = {{"n", Type::IntList}, {"kappa", Type::Real}};
        m["direction-scan"] = {{"branches", Type::Int}, {"contraction", Type::Int}, {"depth", Type::Int},
                               {"gap", Type::Int},      {"offset", Type::Int},      {"level", Type::Int},
                               {"theta_level", Type::Int}, {"sigma", Type::Real},   {"eta", Type::Real},
                               {"tau", Type::Real}};
        m["content-duality"] = {{"sets", Type::Int},      {"min_level", Type::Int}, {"max_level", Type::Int},
                                {"survival", Type::Real}, {"tau", Type::Real}};
        m["branching-audit"] = {{"source", Type::Text}, {"branches", Type::IntList}, {"contraction", Type::Int},
                                {"depth", Type::Int},   {"sets", Type::Int},         {"m", Type::Int},
                                {"n", Type::Int},       {"survival", Type::Real}};
        m["inverse-probe"] = {{"mode", Type::Text},      {"sets", Type::Int},      {"level", Type::Int},
                              {"survival", Type::Real},  {"epsilon", Type::Real},  {"tau", Type::Real},
                              {"eta", Type::Real},       {"kappa", Type::Real},    {"instances", Type::Int},
                              {"m", Type::IntList},      {"n", Type::IntList},     {"rho", Type::RealList},
                              {"keep", Type::Real}};
        m["prop3-probe"] = {{"instances", Type::Int},  {"depth", Type::Int},       {"theta_level", Type::Int},
                            {"c", Type::Real},         {"big_c", Type::Real},      {"c_gamma", Type::Text},
                            {"m_threshold", Type::Real}, {"n_threshold", Type::Real}, {"r_level", Type::Int},
                            {"big_r_level", Type::Int}};
        m["gen"] = generator_fields();
        m["dim"] = generator_fields();
        m["dim"].push_back({"levels", Type::IntList});
        m["dim"].push_back({"step", Type::Int});
        return m;
    }();
    return s;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ';') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::optional<std::int64_t> to_int(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> to_uint(std::string_view s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<double> to_real(std::string_view s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<bool> to_bool(std::string_view s) {
    std::string l(s);
    std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
    if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
    if (l == "false" || l == "0" || l == "no" || l == "off") return false;
    return std::nullopt;
}

bool well_typed(const std::string& v, Type t) {
    switch (t) {
        case Type::Int: return to_int(v).has_value();
        case Type::Real: return to_real(v).has_value();
        case Type::Bool: return to_bool(v).has_value();
        case Type::Text: return true;
        case Type::IntList:
            for (const auto& x : split_list(v)) {
                if (!to_int(x)) return false;
            }
            return true;
        case Type::RealList:
            for (const auto& x : split_list(v)) {
                if (!to_real(x)) return false;
            }
            return true;
    }
    return false;
}

[[noreturn]] void bad_value(std::string_view key, const std::string& value, const char* what) {
    throw ConfigError("field '" + std::string(key) + "': expected " + what + ", got '" + value + "'");
}

}  // namespace

std::string normalize_key(std::string_view key) {
    std::string out = trim(key);
    for (char& c : out) {
        c = c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

void ExperimentConfig::set(std::string key, std::string value) {
    key = normalize_key(key);
    if (key.empty()) throw ConfigError("empty field name");
    if (key == "kind") {
        kind_ = trim(value);
        return;
    }
    values_[key] = trim(value);
}

bool ExperimentConfig::has(std::string_view key) const { return values_.find(key) != values_.end(); }

void ExperimentConfig::erase(std::string_view key) {
    auto it = values_.find(key);
    if (it != values_.end()) values_.erase(it);
}

std::string ExperimentConfig::text(std::string_view key, std::string_view fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? std::string(fallback) : it->second;
}

double ExperimentConfig::real(std::string_view key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    auto v = to_real(it->second);
    if (!v) bad_value(key, it->second, "a real number");
    return *v;
}

std::int64_t ExperimentConfig::integer(std::string_view key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    auto v = to_int(it->second);
    if (!v) bad_value(key, it->second, "an integer");
    return *v;
}

bool ExperimentConfig::flag(std::string_view key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    auto v = to_bool(it->second);
    if (!v) bad_value(key, it->second, "a boolean");
    return *v;
}

std::vector<std::int64_t> ExperimentConfig::integers(std::string_view key, std::vector<std::int64_t> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::int64_t> out;
    for (const auto& x : split_list(it->second)) {
        auto v = to_int(x);
        if (!v) bad_value(key, it->second, "a list of integers");
        out.push_back(*v);
    }
    return out;
}

std::vector<double> ExperimentConfig::reals(std::string_view key, std::vector<double> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    for (const auto& x : split_list(it->second)) {
        auto v = to_real(x);
        if (!v) bad_value(key, it->second, "a list of reals");
        out.push_back(*v);
    }
    return out;
}

std::uint64_t ExperimentConfig::seed() const {
    auto it = values_.find("seed");
    if (it == values_.end()) throw ConfigError("field 'seed': required for randomized experiments");
    auto v = to_uint(it->second);
    if (!v) bad_value("seed", it->second, "an unsigned 64-bit integer");
    return *v;
}

std::string ExperimentConfig::canonical() const {
    std::string out = "kind=" + kind_ + "\n";
    for (const auto& [k, v] : values_) {
        if (k == "out" || k == "jobs") continue;
        out += k + "=" + v + "\n";
    }
    return out;
}

std::uint64_t ExperimentConfig::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        bool quoted = false;
        std::string clean;
        for (char c : line) {
            if (c == '"') quoted = !quoted;
            if (c == '#' && !quoted) break;
            clean += c;
        }
        clean = trim(clean);
        if (clean.empty()) continue;
        auto eq = clean.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
        std::string key = trim(std::string_view(clean).substr(0, eq));
        std::string value = trim(std::string_view(clean).substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        cfg.set(key, value);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> k = {"ap-counterexample", "direction-scan", "content-duality",
                                               "branching-audit",   "inverse-probe",  "prop3-probe"};
    return k;
}

void validate(const ExperimentConfig& config) {
    if (config.kind().empty()) throw ConfigError("field 'kind': missing");
    auto it = schemas().find(config.kind());
    if (it == schemas().end()) throw ConfigError("field 'kind': unknown experiment '" + config.kind() + "'");
    for (const auto& [key, value] : config.values()) {
        const Field* field = nullptr;
        for (const auto& f : common_fields()) {
            if (key == f.name) field = &f;
        }
        for (const auto& f : it->second) {
            if (key == f.name) field = &f;
        }
        if (!field) throw ConfigError("field '" + key + "': not used by " + config.kind());
        if (!well_typed(value, field->type)) throw ConfigError("field '" + key + "': malformed value '" + value + "'");
    }
    if (config.has("seed")) (void)config.seed();
    for (const auto& [key, value] : config.values()) {
        bool is_level = key == "level" || key.find("_level") != std::string::npos;
        if (!is_level || key == "theta_level") continue;
        auto v = config.integer(key, 0);
        if (v < 0 || v > max_level()) {
            throw ConfigError("field '" + key + "': must lie in [0, " + std::to_string(max_level()) + "]");
        }
    }
    if (config.has("theta_level")) {
        auto q = config.integer("theta_level", 0);
        if (q < 0 || q > kMaxDirectionLevel) {
            throw ConfigError("field 'theta_level': must lie in [0, " + std::to_string(kMaxDirectionLevel) + "]");
        }
    }
    for (const char* key : {"sigma", "eta", "tau", "epsilon", "kappa", "survival", "keep", "c", "big_c"}) {
        if (config.has(key) && !(config.real(key, 0.0) >= 0.0)) {
            throw ConfigError("field '" + std::string(key) + "': must be nonnegative");
        }
    }
    if (config.has("jobs") && config.integer("jobs", 1) < 0) throw ConfigError("field 'jobs': must be >= 0");
}

}  // namespace fslab::lab
