#pragma once

#include <optional>

#include "fslab/dyadic/level.hpp"

namespace fslab {

/// Scale window [r, R] with dyadic radii; R empty means B(x, R) is the whole plane.
class ScaleWindow {
public:
    ScaleWindow(Dyadic r, std::optional<Dyadic> R);
    static ScaleWindow levels(Level r, std::optional<Level> R);

    const Dyadic& r() const { return r_; }
    const std::optional<Dyadic>& R() const { return R_; }

    /// Radii in cells of a level-L grid; throws unless integral.
    std::int64_t r_cells(Level level) const;
    std::optional<std::int64_t> R_cells(Level level) const;

    /// Level of r when r is an exact power 2^-l.
    std::optional<int> r_level() const;

private:
    Dyadic r_;
    std::optional<Dyadic> R_;
};

}  // namespace fslab
