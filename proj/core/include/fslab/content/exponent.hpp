#pragma once

#include <optional>
#include <utility>

namespace fslab {

/// Positive exponent tau, remembered as p/q when it is a small-denominator rational.
class Exponent {
public:
    static constexpr int kMaxDenominator = 64;

    explicit Exponent(double value);  // detects p/q with q <= kMaxDenominator
    static Exponent rational(int p, int q);

    double value() const { return value_; }
    /// (p, q) in lowest terms when known.
    std::optional<std::pair<int, int>> fraction() const { return fraction_; }

private:
    Exponent() = default;
    double value_ = 0.0;
    std::optional<std::pair<int, int>> fraction_;
};

}  // namespace fslab
