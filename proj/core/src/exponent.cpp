#include "fslab/content/exponent.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fslab/error.hpp"

namespace fslab {

Exponent::Exponent(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) throw Error("exponent must be positive, got " + std::to_string(value));
    for (int q = 1; q <= kMaxDenominator; ++q) {
        double p = std::round(value * q);
        if (p >= 1.0 && p < 1e9 && p / q == value) {
            fraction_ = std::pair<int, int>{static_cast<int>(p), q};
            return;
        }
    }
}

Exponent Exponent::rational(int p, int q) {
    if (p <= 0 || q <= 0) throw Error("exponent must be a positive fraction");
    int g = std::gcd(p, q);
    Exponent e;
    e.fraction_ = std::pair<int, int>{p / g, q / g};
    e.value_ = static_cast<double>(p / g) / (q / g);
    return e;
}

}  // namespace fslab
