#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "fslab/dyadic/ops.hpp"
#include "fslab/error.hpp"
#include "fslab/measures/operations.hpp"
#include "fslab/projections/fiber.hpp"
#include "fslab/projections/multiplicity.hpp"
#include "fslab/projections/projection.hpp"
#include "fslab/projections/scan.hpp"
#include "fslab/regularity/generators.hpp"
#include "oracles/oracles.hpp"

using namespace fslab;

namespace {

std::vector<CellIndex> to_vec(std::span<const CellIndex> s) { return {s.begin(), s.end()}; }

Direction random_direction(std::mt19937_64& rng, int max_q) {
    int q = static_cast<int>(rng() % (max_q + 1));
    return Direction(static_cast<std::int64_t>(rng() % ((std::uint64_t{1} << q) + 1)), q);
}

GridSet2D random_product(std::mt19937_64& rng, int level, double keep) {
    CellIndex n = CellIndex{1} << level;
    return product(GridSet1D(Level(level), oracle::random_cells(rng, 0, n - 1, keep)),
                   GridSet1D(Level(level), oracle::random_cells(rng, 0, n - 1, keep)));
}

GridSet2D random_explicit(std::mt19937_64& rng, int level, double keep) {
    CellIndex n = CellIndex{1} << level;
    std::vector<Cell2> cells;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (CellIndex i = 0; i < n; ++i) {
        for (CellIndex j = 0; j < n; ++j) {
            if (u(rng) < keep) cells.push_back({i, j});
        }
    }
    if (cells.empty()) cells.push_back({0, 0});
    return GridSet2D(Level(level), cells);
}

bool subset(const GridSet2D& a, const GridSet2D& b) {
    for (const Cell2& c : a.cells()) {
        if (!b.contains(c)) return false;
    }
    return true;
}

ScaleWindow window(int r, std::optional<int> big) {
    return ScaleWindow::levels(Level(r), big ? std::optional<Level>(Level(*big)) : std::nullopt);
}

}  // namespace

TEST(ProjectSet, HorizontalIsTheShadow) {
    std::mt19937_64 rng(51);
    GridSet2D k = random_explicit(rng, 5, 0.1);
    std::set<CellIndex> xs;
    for (const Cell2& c : k.cells()) xs.insert(c.x);
    EXPECT_EQ(to_vec(project_set(k, Direction(0, 0), Level(5)).cells()), std::vector<CellIndex>(xs.begin(), xs.end()));
}

TEST(ProjectSet, SingleCellHasOneOrTwoCells) {
    for (int p = 0; p <= 8; ++p) {
        Direction theta(p, 3);
        GridSet2D k(Level(6), {{13, 41}});
        for (int t = 0; t <= 6; ++t) {
            GridSet1D img = project_set(k, theta, Level(t));
            EXPECT_GE(img.size(), 1u);
            EXPECT_LE(img.size(), 2u);
            EXPECT_TRUE(img.contains(project_point(13, 41, theta) >> (6 - t)));
        }
    }
}

TEST(ProjectSet, MatchesPointwiseProjection) {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 50; ++trial) {
        int l = 3 + static_cast<int>(rng() % 5);
        GridSet2D k = random_explicit(rng, l, 0.15);
        Direction theta = random_direction(rng, 6);
        int t = static_cast<int>(rng() % (l + 1));
        std::vector<CellIndex> pts;
        for (const Cell2& c : k.cells()) pts.push_back(project_point(c.x, c.y, theta));
        auto expected = oracle::coarsen(pts, l - t);
        EXPECT_EQ(to_vec(project_set(k, theta, Level(t)).cells()), std::vector<CellIndex>(expected.begin(), expected.end()));
    }
}

TEST(ProjectSet, ProductRouteEqualsExplicitRoute) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        int l = 3 + static_cast<int>(rng() % 6);
        GridSet2D k = random_product(rng, l, 0.3);
        Direction theta = random_direction(rng, 8);
        int t = static_cast<int>(rng() % (l + 1));
        EXPECT_EQ(project_set(k, theta, Level(t)), project_set(k.materialize(), theta, Level(t)));
    }
}

TEST(AffineSumset, ZeroDilationGivesA) {
    std::mt19937_64 rng(54);
    GridSet1D a(Level(6), oracle::random_cells(rng, 0, 63, 0.3));
    GridSet1D b(Level(6), oracle::random_cells(rng, 0, 63, 0.3));
    EXPECT_EQ(affine_sumset(a, GridSet1D(Level(6), {0}), b, Level(6)), a);
}

TEST(AffineSumset, MatchesExactRationalOracle) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        int l = 3 + static_cast<int>(rng() % 5);
        CellIndex n = CellIndex{1} << l;
        auto av = oracle::random_cells(rng, -n, n - 1, 0.2);
        auto ev = oracle::random_cells(rng, 0, n, 0.2);
        auto bv = oracle::random_cells(rng, -n, n - 1, 0.2);
        int t = static_cast<int>(rng() % (l + 1));
        std::set<CellIndex> expected;
        for (CellIndex a : av) {
            for (CellIndex e : ev) {
                for (CellIndex b : bv) expected.insert(oracle::floor_div_pow2(a * n + e * b, 2 * l - t));
            }
        }
        GridSet1D got = affine_sumset(GridSet1D::widened(Level(l), av), GridSet1D::widened(Level(l), ev),
                                      GridSet1D::widened(Level(l), bv), Level(t));
        EXPECT_EQ(to_vec(got.cells()), std::vector<CellIndex>(expected.begin(), expected.end()));
    }
}

TEST(AffineSumset, ArithmeticProgressionCount) {
    ApFamily f = gen_ap_family(16, 0.25);
    std::size_t count = affine_sumset(f.a, f.e, f.a, f.a.level()).size();
    EXPECT_LE(count, 128u);
    EXPECT_GE(count, 16u);
    EXPECT_EQ(count, 109u);
}

TEST(Multiplicity, SingleCellIsOne) {
    GridSet2D k(Level(6), {{20, 30}});
    for (int p : {0, 1, 3, 8}) {
        for (int r = 0; r <= 6; ++r) {
            for (std::optional<int> big : {std::optional<int>{}, std::optional<int>{0}, std::optional<int>{r}}) {
                EXPECT_EQ(multiplicity(k, Direction(p, 3), {20, 30}, window(r, big)), 1);
            }
        }
    }
}

TEST(Multiplicity, CenterNotInSetThrows) {
    GridSet2D k(Level(4), {{1, 1}});
    EXPECT_THROW(multiplicity(k, Direction(0, 0), {2, 2}, window(4, 0)), Error);
}

TEST(Multiplicity, FullSquareVerticalFiber) {
    const int l = 6;
    std::vector<CellIndex> all;
    for (CellIndex i = 0; i < 64; ++i) all.push_back(i);
    GridSet2D k = product(GridSet1D(Level(l), all), GridSet1D(Level(l), all));
    std::vector<Cell2> cells = k.cells();
    for (int r = 2; r <= l; ++r) {
        std::int64_t rho = std::int64_t{1} << (l - r);
        std::int64_t expected = oracle::fiber_count(cells, 0, 0, {32, 32}, rho, std::int64_t{1} << l);
        EXPECT_EQ(multiplicity(k, Direction(0, 0), {32, 32}, window(r, 0)), expected);
    }
}

TEST(Multiplicity, MatchesRasterizationOracle) {
    std::mt19937_64 rng(56);
    for (int trial = 0; trial < 120; ++trial) {
        int l = 3 + static_cast<int>(rng() % 3);
        GridSet2D k = random_explicit(rng, l, 0.1 + 0.3 * static_cast<double>(rng() % 3));
        std::vector<Cell2> cells = k.cells();
        Direction theta = random_direction(rng, 3);
        int r = static_cast<int>(rng() % (l + 1));
        std::optional<int> big;
        if (rng() % 3 != 0) big = static_cast<int>(rng() % (r + 1));
        ScaleWindow w = window(r, big);
        std::vector<std::int64_t> bulk = multiplicities(k, theta, w);
        ASSERT_EQ(bulk.size(), cells.size());
        for (std::size_t i = 0; i < cells.size(); i += 1 + rng() % 3) {
            std::int64_t rho = std::int64_t{1} << (l - r);
            std::int64_t rho_big = big ? std::int64_t{1} << (l - *big) : -1;
            std::int64_t expected = oracle::fiber_count(cells, theta.numerator(), theta.level(), cells[i], rho, rho_big);
            EXPECT_EQ(multiplicity(k, theta, cells[i], w), expected)
                << "trial " << trial << " theta " << theta.numerator() << "/2^" << theta.level();
            EXPECT_EQ(bulk[i], expected);
            EXPECT_GE(expected, 1);
        }
    }
}

TEST(Multiplicity, CeilingAtUnitWindow) {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 20; ++trial) {
        int l = 6;
        GridSet2D k = random_explicit(rng, l, 0.3);
        Direction theta = random_direction(rng, 6);
        for (int d = 0; d <= l; ++d) {
            for (std::int64_t m : multiplicities(k, theta, window(d, 0))) EXPECT_LE(m, 10 * (std::int64_t{1} << d));
        }
    }
}

TEST(HighMultiplicity, ThresholdOneIsEverything) {
    std::mt19937_64 rng(58);
    GridSet2D k = random_product(rng, 6, 0.3);
    EXPECT_EQ(high_multiplicity_set(k, Direction(3, 3), 1.0, window(4, 0)), k.materialize());
}

TEST(HighMultiplicity, AboveCeilingIsEmpty) {
    std::mt19937_64 rng(59);
    GridSet2D k = random_product(rng, 7, 0.5);
    for (int d = 0; d <= 7; ++d) {
        EXPECT_TRUE(high_multiplicity_set(k, Direction(5, 4), 10.0 * std::pow(2.0, d) + 1.0, window(d, 0)).empty());
    }
}

TEST(HighMultiplicity, AntitoneInThreshold) {
    std::mt19937_64 rng(60);
    for (int trial = 0; trial < 50; ++trial) {
        int l = 4 + static_cast<int>(rng() % 3);
        GridSet2D k = random_product(rng, l, 0.4);
        Direction theta = random_direction(rng, 5);
        ScaleWindow w = window(l - static_cast<int>(rng() % 2), 0);
        GridSet2D previous = k.materialize();
        for (double m = 1.0; m <= 20.0; m += 1.0) {
            GridSet2D h = high_multiplicity_set(k, theta, m, w);
            EXPECT_TRUE(subset(h, previous));
            previous = h;
        }
    }
}

TEST(HighMultiplicity, WindowScalingInclusions) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        int l = 5 + static_cast<int>(rng() % 2);
        GridSet2D k = random_explicit(rng, l, 0.3);
        Direction theta = random_direction(rng, 4);
        int r = l - static_cast<int>(rng() % 2);
        int big = 3 + static_cast<int>(rng() % 2);
        double m = 1.0 + static_cast<double>(rng() % 8);
        GridSet2D h = high_multiplicity_set(k, theta, m, window(r, big));
        for (int c = 1; c <= 3 && c <= r - big && c <= big; ++c) {
            double scale = std::pow(2.0, c);
            EXPECT_TRUE(subset(h, high_multiplicity_set(k, theta, m / scale, window(r - c, big))));
            EXPECT_TRUE(subset(h, high_multiplicity_set(k, theta, m, window(r, big - c))));
        }
    }
}

TEST(HighMultiplicity, RescalingEquivariance) {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 30; ++trial) {
        int l = 6;
        GridSet2D k = random_explicit(rng, l, 0.2);
        Direction theta = random_direction(rng, 4);
        int l0 = 1 + static_cast<int>(rng() % 2);
        RescaleMap t(Dyadic::make(static_cast<std::int64_t>(rng() % 64), 6), Dyadic::make(static_cast<std::int64_t>(rng() % 64), 6), l0);
        int r = l - static_cast<int>(rng() % 2);
        int big = l0 + static_cast<int>(rng() % 2);
        double m = 1.0 + static_cast<double>(rng() % 5);
        GridSet2D lhs = rescale(high_multiplicity_set(k, theta, m, window(r, big)), t);
        GridSet2D rhs = high_multiplicity_set(rescale(k, t), theta, m, window(r - l0, big - l0));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Scan, ThresholdRounding) {
    EXPECT_EQ(multiplicity_threshold(0.5, 8), 16);
    EXPECT_EQ(multiplicity_threshold(0.0, 8), 1);
    EXPECT_EQ(multiplicity_threshold(0.55, 12), static_cast<std::int64_t>(std::ceil(std::pow(2.0, 6.6))));
}

TEST(Scan, HugeSigmaFlagsNothing) {
    SelfSimilarSet s = gen_self_similar({.branches = 2, .contraction_level = 2, .depth = 3});
    ScanResult r = hm_scan(s.measure, s.measure, window(6, 0), {.sigma = 2.0, .eta = 0.0, .theta_level = 4, .tau = 0.5});
    ASSERT_EQ(r.rows.size(), 16u);
    for (const ScanRow& row : r.rows) {
        EXPECT_EQ(row.hm_mass, 0.0);
        EXPECT_FALSE(row.flagged);
    }
    EXPECT_TRUE(r.exceptional_set.empty());
    EXPECT_EQ(r.exceptional_content.value, 0.0);
}

TEST(Scan, ThresholdOneGivesTheBallMass) {
    SelfSimilarSet s = gen_self_similar({.branches = 3, .contraction_level = 2, .depth = 3});
    ScanResult r = hm_scan(s.measure, s.measure, window(6, 0), {.sigma = 0.0, .eta = 50.0, .theta_level = 3, .tau = 0.5});
    double ball = ball_mass(product_measure(s.measure, s.measure), 1.0);
    EXPECT_NEAR(ball, 1.0, 1e-12);
    for (const ScanRow& row : r.rows) {
        EXPECT_NEAR(row.hm_mass, ball, 1e-12);
        EXPECT_TRUE(row.flagged);
    }
    EXPECT_EQ(r.exceptional_set.size(), 8u);
}

TEST(Scan, CoveringColumnMatchesProjection) {
    SelfSimilarSet s = gen_self_similar({.branches = 3, .contraction_level = 3, .depth = 2});
    ScanResult r = hm_scan(s.measure, s.measure, window(6, 0), {.sigma = 0.3, .eta = 0.1, .theta_level = 4, .tau = 0.5});
    for (const ScanRow& row : r.rows) {
        std::size_t n = project_set(product(s.set, s.set), row.theta, Level(6)).size();
        EXPECT_EQ(row.covering, static_cast<std::int64_t>(n));
        EXPECT_NEAR(row.dimension_ratio, std::log2(static_cast<double>(n)) / 6.0, 1e-15);
        EXPECT_EQ(row.flagged, row.hm_mass >= std::pow(2.0, -0.6));
    }
}

TEST(Scan, JobsDoNotChangeResults) {
    SelfSimilarSet s = gen_self_similar({.branches = 4, .contraction_level = 3, .depth = 2});
    ScanParams p{.sigma = 0.4, .eta = 0.05, .theta_level = 5, .tau = 0.5, .jobs = 1};
    ScanResult one = hm_scan(s.measure, s.measure, window(6, 0), p);
    p.jobs = 3;
    ScanResult three = hm_scan(s.measure, s.measure, window(6, 0), p);
    ASSERT_EQ(one.rows.size(), three.rows.size());
    for (std::size_t i = 0; i < one.rows.size(); ++i) {
        EXPECT_EQ(one.rows[i].hm_mass, three.rows[i].hm_mass);
        EXPECT_EQ(one.rows[i].covering, three.rows[i].covering);
    }
    EXPECT_EQ(one.exceptional_set, three.exceptional_set);
}

TEST(Scan, SelfSimilarGolden) {
    SelfSimilarSet s = gen_self_similar({.branches = 4, .contraction_level = 4, .depth = 3});
    ScanResult r = hm_scan(s.measure, s.measure, window(12, 0), {.sigma = 0.55, .eta = 0.05, .theta_level = 8, .tau = 0.5});
    ASSERT_EQ(r.rows.size(), 256u);
    EXPECT_EQ(r.threshold, 98);
    // The vertical fibers meet 64 disjoint r-intervals, below M.
    EXPECT_TRUE(r.exceptional_set.empty());
    EXPECT_EQ(r.exceptional_content.value, 0.0);
    EXPECT_EQ(r.rows[0].hm_mass, 0.0);
}

TEST(Fibers, ColumnTableMatchesSquareTable) {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 60; ++trial) {
        int l = 3 + static_cast<int>(rng() % 3);
        GridSet2D k = random_explicit(rng, l, 0.1 + 0.5 * static_cast<double>(rng() % 8) / 8.0);
        Direction theta = random_direction(rng, 5);
        std::int64_t rho = 1 + static_cast<std::int64_t>(rng() % (std::uint64_t{1} << l));
        FiberGeometry g(theta);
        std::vector<Cell2> cells = k.cells();
        std::vector<Square> squares;
        std::vector<std::int64_t> keys;
        for (const Cell2& c : cells) {
            squares.push_back(thickened(c, rho));
            keys.push_back(g.key(c.x, c.y));
            keys.push_back(g.key(c.x, c.y) + static_cast<std::int64_t>(rng() % 7) - 3);
        }
        FiberTable a = build_fibers(squares, g, keys);
        FiberTable b = build_point_fibers(cells, rho, g, keys);
        ASSERT_EQ(a.keys, b.keys);
        for (std::size_t i = 0; i < a.keys.size(); ++i) {
            ASSERT_EQ(a.merged[i].size(), b.merged[i].size()) << "key " << a.keys[i];
            for (std::size_t j = 0; j < a.merged[i].size(); ++j) {
                EXPECT_EQ(a.merged[i][j].lo, b.merged[i][j].lo);
                EXPECT_EQ(a.merged[i][j].hi, b.merged[i][j].hi);
            }
        }
    }
}
