#include "fslab/dyadic/level.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "fslab/error.hpp"

namespace fslab {

namespace {

int read_max_level() {
    const char* env = std::getenv("FSLAB_MAX_LEVEL");
    if (env == nullptr || *env == '\0') return 30;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0 || v > 40) {
        throw Error("FSLAB_MAX_LEVEL must be an integer in [0, 40], got '" + std::string(env) + "'");
    }
    return static_cast<int>(v);
}

}  // namespace

int max_level() {
    static const int value = read_max_level();
    return value;
}

Level::Level(int value) : value_(value) {
    if (value < 0 || value > max_level()) {
        throw Error("level " + std::to_string(value) + " outside [0, " + std::to_string(max_level()) + "]");
    }
}

double Level::mesh() const { return std::ldexp(1.0, -value_); }

Dyadic Dyadic::make(std::int64_t num, int exp) {
    if (exp < 0) {
        if (exp < -62) throw Error("dyadic value out of range");
        __int128 v = static_cast<__int128>(num) << (-exp);
        if (v > INT64_MAX || v < INT64_MIN) throw Error("dyadic value out of range");
        return Dyadic{static_cast<std::int64_t>(v), 0};
    }
    return Dyadic{num, exp}.normalized_();
}

Dyadic Dyadic::normalized_() const {
    if (exp < 0) return make(num, exp);
    Dyadic d = *this;
    if (d.num == 0) return Dyadic{0, 0};
    while (d.exp > 0 && (d.num & 1) == 0) {
        d.num /= 2;
        --d.exp;
    }
    return d;
}

double Dyadic::value() const { return std::ldexp(static_cast<double>(num), -exp); }

bool Dyadic::is_integer_at(int level) const {
    int shift = exp - level;
    if (shift <= 0) return true;
    if (shift >= 63) return num == 0;
    return (num & ((std::int64_t{1} << shift) - 1)) == 0;
}

std::int64_t Dyadic::at(int level) const {
    if (!is_integer_at(level)) throw Error("dyadic value is not on the level-" + std::to_string(level) + " grid");
    int shift = exp - level;
    if (shift >= 0) return num >> shift;
    if (-shift > 62) throw Error("dyadic value overflows at level " + std::to_string(level));
    __int128 v = static_cast<__int128>(num) << (-shift);
    if (v > INT64_MAX || v < INT64_MIN) throw Error("dyadic value overflows at level " + std::to_string(level));
    return static_cast<std::int64_t>(v);
}

Dyadic Dyadic::times_pow2(int k) const { return make(num, exp - k); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int e = a.exp > b.exp ? a.exp : b.exp;
    __int128 x = static_cast<__int128>(a.num) << (e - a.exp);
    __int128 y = static_cast<__int128>(b.num) << (e - b.exp);
    return x <=> y;
}

}  // namespace fslab
