#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <string>

namespace fslab {

/// Element sum_{r<q} c_r z^r / 2^D of Q(z), z = 2^(-p/q), with integer c_r.
///
/// Since x^q - 2^p is irreducible for gcd(p, q) = 1, two elements are equal
/// exactly when their coefficients agree.
class PowerSum {
public:
    using Coeffs = boost::container::small_vector<__int128, 4>;

    PowerSum() = default;
    PowerSum(int p, int q, int scale_bits);  // zero

    int p() const { return p_; }
    int q() const { return q_; }
    int scale_bits() const { return d_; }
    const Coeffs& coefficients() const { return c_; }

    bool is_zero() const;
    int sign() const;
    int sign_exact() const;  // bypasses the floating filter
    long double to_long_double() const;
    double to_double() const { return static_cast<double>(to_long_double()); }
    std::string to_string() const;  // e.g. "(3 + 5 z) / 2^8"

    PowerSum& operator+=(const PowerSum& o);
    PowerSum& operator-=(const PowerSum& o);
    friend PowerSum operator+(PowerSum a, const PowerSum& b) { return a += b; }
    friend PowerSum operator-(PowerSum a, const PowerSum& b) { return a -= b; }
    friend bool operator==(const PowerSum& a, const PowerSum& b);
    friend std::strong_ordering operator<=>(const PowerSum& a, const PowerSum& b);

    PowerSum& add_coefficient(int r, __int128 v);

private:
    void require_same_field(const PowerSum& o) const;

    int p_ = 1;
    int q_ = 1;
    int d_ = 0;
    Coeffs c_ = Coeffs(std::size_t{1}, __int128{0});
};

/// Arithmetic context for z = 2^(-p/q) values up to level `max_level`.
class PowerSumField {
public:
    PowerSumField(int p, int q, int max_level);

    /// True when sums of up to 2^(max_level + 3) powers fit in 128-bit coefficients.
    static bool fits(int p, int q, int max_level);

    PowerSum zero() const { return PowerSum(p_, q_, d_); }
    PowerSum power(int level) const;  // z^level, 0 <= level <= max_level

private:
    int p_;
    int q_;
    int d_;
    int max_level_;
};

}  // namespace fslab
