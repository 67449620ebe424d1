#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fslab/error.hpp"

namespace fslab::lab {

/// Invalid configuration; the message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Flat key = value experiment description. Keys are lower case with '_' separators.
class ExperimentConfig {
public:
    ExperimentConfig() = default;

    const std::string& kind() const { return kind_; }
    void set_kind(std::string kind) { kind_ = std::move(kind); }

    /// Sets a value; "kind" is routed to set_kind. Later calls win.
    void set(std::string key, std::string value);
    bool has(std::string_view key) const;
    void erase(std::string_view key);

    std::string text(std::string_view key, std::string_view fallback) const;
    double real(std::string_view key, double fallback) const;
    std::int64_t integer(std::string_view key, std::int64_t fallback) const;
    bool flag(std::string_view key, bool fallback) const;
    std::vector<std::int64_t> integers(std::string_view key, std::vector<std::int64_t> fallback) const;
    std::vector<double> reals(std::string_view key, std::vector<double> fallback) const;

    /// Seed, required for randomized experiments.
    std::uint64_t seed() const;

    const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

    /// "kind=...\n" followed by sorted key=value lines; the basis of hash().
    std::string canonical() const;
    /// FNV-1a 64 of canonical().
    std::uint64_t hash() const;

private:
    std::string kind_;
    std::map<std::string, std::string, std::less<>> values_;
};

/// Parses '#'-commented "key = value" lines; values may be double-quoted.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Lower case, '-' mapped to '_'.
std::string normalize_key(std::string_view key);

/// Known experiment kinds.
const std::vector<std::string>& experiment_kinds();

/// Throws ConfigError naming the first unknown or malformed field.
void validate(const ExperimentConfig& config);

}  // namespace fslab::lab
