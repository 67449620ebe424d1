#include "fslab/projections/window.hpp"

#include <string>

#include "fslab/error.hpp"

namespace fslab {

ScaleWindow::ScaleWindow(Dyadic r, std::optional<Dyadic> R)
    : r_(Dyadic::make(r.num, r.exp)), R_(R ? std::optional<Dyadic>(Dyadic::make(R->num, R->exp)) : std::nullopt) {
    if (r_.num <= 0) throw Error("window radius r must be positive");
    if (R_ && *R_ < r_) throw Error("window needs r <= R");
}

ScaleWindow ScaleWindow::levels(Level r, std::optional<Level> R) {
    return ScaleWindow(Dyadic::power(r.value()), R ? std::optional<Dyadic>(Dyadic::power(R->value())) : std::nullopt);
}

std::int64_t ScaleWindow::r_cells(Level level) const {
    if (!r_.is_integer_at(level.value())) {
        throw Error("window radius r is finer than the level-" + std::to_string(level.value()) + " grid");
    }
    return r_.at(level.value());
}

std::optional<std::int64_t> ScaleWindow::R_cells(Level level) const {
    if (!R_) return std::nullopt;
    if (!R_->is_integer_at(level.value())) {
        throw Error("window radius R is finer than the level-" + std::to_string(level.value()) + " grid");
    }
    return R_->at(level.value());
}

std::optional<int> ScaleWindow::r_level() const {
    if (r_.num != 1) return std::nullopt;
    return r_.exp;
}

}  // namespace fslab
