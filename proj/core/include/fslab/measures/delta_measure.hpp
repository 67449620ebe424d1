#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fslab/dyadic/grid_set.hpp"

namespace fslab {

/// Nonnegative finite measure on level-L cells. Zero weights are dropped on construction.
template <class Cell>
class DeltaMeasure {
public:
    using Atom = std::pair<Cell, double>;

    DeltaMeasure() = default;
    DeltaMeasure(Level level, std::vector<Atom> atoms);  // merges repeated cells by summing

    Level level() const { return level_; }
    std::span<const Atom> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    double total_mass() const;
    bool is_probability(double tol = 1e-12) const;
    double mass_of(const Cell& c) const;
    DeltaMeasure normalized() const;

private:
    Level level_;
    std::vector<Atom> atoms_;
};

using Measure1D = DeltaMeasure<CellIndex>;
using Measure2D = DeltaMeasure<Cell2>;

extern template class DeltaMeasure<CellIndex>;
extern template class DeltaMeasure<Cell2>;

Measure1D uniform_measure(const GridSet1D& s);
Measure2D uniform_measure(const GridSet2D& s);
Measure1D point_mass(Level level, CellIndex k);

GridSet1D support(const Measure1D& mu);
GridSet2D support(const Measure2D& mu);

/// Product measure on the explicit product of supports.
Measure2D product_measure(const Measure1D& a, const Measure1D& b);

}  // namespace fslab
