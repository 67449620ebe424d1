#include "fslab/content/power_sum.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>

#include "fslab/error.hpp"

namespace fslab {

namespace {

using boost::multiprecision::cpp_int;

cpp_int to_cpp(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    cpp_int r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? cpp_int(-r) : r;
}

std::string int128_string(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

// floor(n^(1/k)) for n >= 0.
cpp_int iroot(const cpp_int& n, int k) {
    if (n < 2 || k == 1) return n;
    unsigned bits = static_cast<unsigned>(msb(n)) + 1;
    cpp_int x = cpp_int(1) << ((bits + static_cast<unsigned>(k) - 1) / static_cast<unsigned>(k));
    while (true) {
        cpp_int y = ((k - 1) * x + n / pow(x, static_cast<unsigned>(k - 1))) / k;
        if (y >= x) break;
        x = y;
    }
    while (pow(x, static_cast<unsigned>(k)) > n) --x;
    while (pow(x + 1, static_cast<unsigned>(k)) <= n) ++x;
    return x;
}

}  // namespace

PowerSum::PowerSum(int p, int q, int scale_bits) : p_(p), q_(q), d_(scale_bits), c_(static_cast<std::size_t>(q), 0) {}

bool PowerSum::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](__int128 v) { return v == 0; });
}

long double PowerSum::to_long_double() const {
    long double s = 0.0L;
    for (int r = 0; r < q_; ++r) {
        if (c_[r] != 0) s += static_cast<long double>(c_[r]) * std::exp2l(-static_cast<long double>(p_) * r / q_);
    }
    return std::ldexp(s, -d_);
}

int PowerSum::sign() const {
    if (is_zero()) return 0;
    long double approx = 0.0L;
    long double magnitude = 0.0L;
    for (int r = 0; r < q_; ++r) {
        if (c_[r] == 0) continue;
        long double t = static_cast<long double>(c_[r]) * std::exp2l(-static_cast<long double>(p_) * r / q_);
        approx += t;
        magnitude += std::fabs(t);
    }
    long double err = magnitude * std::ldexp(1.0L, -56) * (q_ + 2);
    if (approx > err) return 1;
    if (approx < -err) return -1;
    return sign_exact();
}

int PowerSum::sign_exact() const {
    if (is_zero()) return 0;
    if (q_ == 1) return c_[0] > 0 ? 1 : -1;
    for (int k = 64 + p_; k < (1 << 20); k *= 2) {
        // z^r 2^k lies in [lo_r, lo_r + 1].
        cpp_int lower = 0;
        cpp_int upper = 0;
        for (int r = 0; r < q_; ++r) {
            if (c_[r] == 0) continue;
            cpp_int c = to_cpp(c_[r]);
            cpp_int lo = iroot(cpp_int(1) << static_cast<unsigned>(k * q_ - p_ * r), q_);
            cpp_int hi = r == 0 ? lo : cpp_int(lo + 1);
            if (c > 0) {
                lower += c * lo;
                upper += c * hi;
            } else {
                lower += c * hi;
                upper += c * lo;
            }
        }
        if (lower > 0) return 1;
        if (upper < 0) return -1;
    }
    throw Error("power sum sign undecided");
}

std::string PowerSum::to_string() const {
    std::string s = "(";
    bool first = true;
    for (int r = 0; r < q_; ++r) {
        if (c_[r] == 0) continue;
        if (!first) s += " + ";
        first = false;
        s += int128_string(c_[r]);
        if (r == 1) s += " z";
        if (r > 1) s += " z^" + std::to_string(r);
    }
    if (first) s += "0";
    s += ") / 2^" + std::to_string(d_) + ", z = 2^(-" + std::to_string(p_) + "/" + std::to_string(q_) + ")";
    return s;
}

void PowerSum::require_same_field(const PowerSum& o) const {
    if (p_ != o.p_ || q_ != o.q_ || d_ != o.d_) throw Error("power sums from different fields");
}

PowerSum& PowerSum::operator+=(const PowerSum& o) {
    require_same_field(o);
    for (int r = 0; r < q_; ++r) c_[r] += o.c_[r];
    return *this;
}

PowerSum& PowerSum::operator-=(const PowerSum& o) {
    require_same_field(o);
    for (int r = 0; r < q_; ++r) c_[r] -= o.c_[r];
    return *this;
}

PowerSum& PowerSum::add_coefficient(int r, __int128 v) {
    c_.at(static_cast<std::size_t>(r)) += v;
    return *this;
}

bool operator==(const PowerSum& a, const PowerSum& b) {
    a.require_same_field(b);
    return std::equal(a.c_.begin(), a.c_.end(), b.c_.begin());
}

std::strong_ordering operator<=>(const PowerSum& a, const PowerSum& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool PowerSumField::fits(int p, int q, int max_level) {
    if (p <= 0 || q <= 0 || q > 64 || max_level < 0) return false;
    long d = static_cast<long>(p) * (max_level / q + 1);
    return d + max_level + 4 <= 124;
}

PowerSumField::PowerSumField(int p, int q, int max_level) : p_(p), q_(q), d_(0), max_level_(max_level) {
    if (!fits(p, q, max_level)) throw Error("exponent too fine for exact arithmetic at this level");
    d_ = p * (max_level / q + 1);
}

PowerSum PowerSumField::power(int level) const {
    if (level < 0 || level > max_level_) throw Error("power level outside field range");
    PowerSum v = zero();
    int m = level / q_;
    int r = level % q_;
    v.add_coefficient(r, static_cast<__int128>(1) << (d_ - p_ * m));
    return v;
}

}  // namespace fslab
