#include "fslab/dyadic/direction.hpp"

#include <cmath>
#include <string>

#include "fslab/error.hpp"

namespace fslab {

Direction::Direction(std::int64_t p, int q) {
    if (q < 0 || q > kMaxDirectionLevel) {
        throw Error("direction level " + std::to_string(q) + " outside [0, " + std::to_string(kMaxDirectionLevel) + "]");
    }
    if (p < 0 || p > (std::int64_t{1} << q)) {
        throw Error("direction " + std::to_string(p) + "/2^" + std::to_string(q) + " outside [0, 1]");
    }
    while (q > 0 && (p & 1) == 0) {
        p /= 2;
        --q;
    }
    if (p == 0) q = 0;
    p_ = p;
    q_ = q;
}

double Direction::value() const { return std::ldexp(static_cast<double>(p_), -q_); }

}  // namespace fslab
