#include "fslab/measures/delta_measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fslab/error.hpp"

namespace fslab {

template <class Cell>
DeltaMeasure<Cell>::DeltaMeasure(Level level, std::vector<Atom> atoms) : level_(level) {
    for (const Atom& a : atoms) {
        if (!(a.second >= 0.0) || !std::isfinite(a.second)) throw Error("measure weights must be finite and nonnegative");
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < atoms.size();) {
        Atom acc = atoms[i++];
        while (i < atoms.size() && atoms[i].first == acc.first) acc.second += atoms[i++].second;
        if (acc.second > 0.0) atoms_.push_back(acc);
    }
}

template <class Cell>
double DeltaMeasure<Cell>::total_mass() const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.second;
    return s;
}

template <class Cell>
bool DeltaMeasure<Cell>::is_probability(double tol) const {
    return std::abs(total_mass() - 1.0) <= tol;
}

template <class Cell>
double DeltaMeasure<Cell>::mass_of(const Cell& c) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), c, [](const Atom& a, const Cell& k) { return a.first < k; });
    return (it != atoms_.end() && it->first == c) ? it->second : 0.0;
}

template <class Cell>
DeltaMeasure<Cell> DeltaMeasure<Cell>::normalized() const {
    double m = total_mass();
    if (m <= 0.0) throw Error("cannot normalize the zero measure");
    std::vector<Atom> out(atoms_.begin(), atoms_.end());
    for (Atom& a : out) a.second /= m;
    return DeltaMeasure(level_, std::move(out));
}

template class DeltaMeasure<CellIndex>;
template class DeltaMeasure<Cell2>;

Measure1D uniform_measure(const GridSet1D& s) {
    if (s.empty()) throw Error("uniform measure on an empty set");
    double w = 1.0 / static_cast<double>(s.size());
    std::vector<Measure1D::Atom> atoms;
    atoms.reserve(s.size());
    for (CellIndex k : s.cells()) atoms.emplace_back(k, w);
    return Measure1D(s.level(), std::move(atoms));
}

Measure2D uniform_measure(const GridSet2D& s) {
    if (s.empty()) throw Error("uniform measure on an empty set");
    double w = 1.0 / static_cast<double>(s.size());
    std::vector<Measure2D::Atom> atoms;
    atoms.reserve(s.size());
    for (const Cell2& c : s.cells()) atoms.emplace_back(c, w);
    return Measure2D(s.level(), std::move(atoms));
}

Measure1D point_mass(Level level, CellIndex k) { return Measure1D(level, {{k, 1.0}}); }

namespace {

// Default bounds, widened to cover cells produced outside them (convolutions).
IndexRange widened(IndexRange r, CellIndex lo, CellIndex hi) { return {std::min(r.lo, lo), std::max(r.hi, hi)}; }

}  // namespace

GridSet1D support(const Measure1D& mu) {
    std::vector<CellIndex> cells;
    cells.reserve(mu.size());
    for (const auto& a : mu.atoms()) cells.push_back(a.first);
    IndexRange b = default_bounds(mu.level());
    if (!cells.empty()) b = widened(b, cells.front(), cells.back());
    return GridSet1D(mu.level(), std::move(cells), b);
}

GridSet2D support(const Measure2D& mu) {
    std::vector<Cell2> cells;
    cells.reserve(mu.size());
    Bounds2 b{default_bounds(mu.level()), default_bounds(mu.level())};
    for (const auto& a : mu.atoms()) {
        cells.push_back(a.first);
        b.x = widened(b.x, a.first.x, a.first.x);
        b.y = widened(b.y, a.first.y, a.first.y);
    }
    return GridSet2D(mu.level(), std::move(cells), b);
}

Measure2D product_measure(const Measure1D& a, const Measure1D& b) {
    if (a.level() != b.level()) throw Error("product of measures at different levels");
    std::vector<Measure2D::Atom> atoms;
    atoms.reserve(a.size() * b.size());
    for (const auto& [x, wx] : a.atoms()) {
        for (const auto& [y, wy] : b.atoms()) atoms.emplace_back(Cell2{x, y}, wx * wy);
    }
    return Measure2D(a.level(), std::move(atoms));
}

}  // namespace fslab
