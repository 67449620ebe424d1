#pragma once

#include <compare>
#include <cstdint>

namespace fslab {

using CellIndex = std::int64_t;

/// Largest admissible level. Reads FSLAB_MAX_LEVEL once; default 30.
int max_level();

/// Grid level L, mesh 2^-L.
class Level {
public:
    Level() = default;
    explicit Level(int value);  // throws unless 0 <= value <= max_level()

    int value() const { return value_; }
    double mesh() const;

    friend auto operator<=>(const Level&, const Level&) = default;

private:
    int value_ = 0;
};

/// Floor division by 2^shift, valid for negative numerators.
inline CellIndex floor_shift(CellIndex v, int shift) { return v >> shift; }

/// Inclusive range of cell indices.
struct IndexRange {
    CellIndex lo = 0;
    CellIndex hi = -1;

    bool contains(CellIndex k) const { return lo <= k && k <= hi; }
    bool empty() const { return hi < lo; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Dyadic rational num * 2^-exp with exp >= 0, kept in lowest terms.
struct Dyadic {
    std::int64_t num = 0;
    int exp = 0;

    static Dyadic make(std::int64_t num, int exp);
    static Dyadic power(int level) { return Dyadic{1, level}.normalized_(); }

    double value() const;
    bool is_integer_at(int level) const;     // num * 2^(level-exp) is an integer
    std::int64_t at(int level) const;        // num * 2^(level-exp); throws unless integral
    Dyadic times_pow2(int k) const;          // value * 2^k

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

private:
    Dyadic normalized_() const;
};

}  // namespace fslab
