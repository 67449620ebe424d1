#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "fslab/error.hpp"
#include "fslab/measures/operations.hpp"
#include "fslab/projections/probes.hpp"
#include "fslab/projections/projection.hpp"
#include "fslab/regularity/generators.hpp"
#include "oracles/oracles.hpp"

using namespace fslab;

namespace {

Measure2D uniform_square(int level, CellIndex side) {
    std::vector<CellIndex> all;
    for (CellIndex i = 0; i < side; ++i) all.push_back(i);
    GridSet1D s(Level(level), all);
    return product_measure(uniform_measure(s), uniform_measure(s));
}

// Exact minimum over all cell subsets with mass >= target, by enumeration.
std::int64_t brute_min_cover(const Measure2D& mu, const Direction& theta, int shift, double target) {
    auto atoms = mu.atoms();
    const std::size_t n = atoms.size();
    std::int64_t best = -1;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        double mass = 0.0;
        std::set<CellIndex> tubes;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                mass += atoms[i].second;
                tubes.insert(project_point(atoms[i].first.x, atoms[i].first.y, theta) >> shift);
            }
        }
        if (mass >= target && (best < 0 || static_cast<std::int64_t>(tubes.size()) < best)) {
            best = static_cast<std::int64_t>(tubes.size());
        }
    }
    return best;
}

}  // namespace

TEST(SingleScale, NonPositiveExponentVerifiesEverything) {
    std::mt19937_64 rng(71);
    Measure1D a = oracle::random_probability(rng, Level(6), oracle::random_cells(rng, 0, 63, 0.2));
    Measure2D mu = product_measure(a, a);
    GridSet1D e(Level(4), {0, 3, 7, 16});
    SingleScaleResult r = single_scale_check(mu, e, 0.6, 0.1, 0.5, Level(6));
    EXPECT_LE(r.threshold, 1.0);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(*r.witness, Direction(0, 0));
    for (const SingleScaleRow& row : r.rows) EXPECT_TRUE(row.verified);
}

TEST(SingleScale, FullSubsetMatchesProjection) {
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 20; ++trial) {
        Measure1D a = oracle::random_probability(rng, Level(7), oracle::random_cells(rng, 0, 127, 0.2));
        Measure1D b = oracle::random_probability(rng, Level(7), oracle::random_cells(rng, 0, 127, 0.2));
        Measure2D mu = product_measure(a, b);
        GridSet1D e(Level(3), {0, 1, 2, 3, 4, 5, 6, 7, 8});
        int delta = 4 + static_cast<int>(rng() % 4);
        SingleScaleResult r = single_scale_check(mu, e, 0.5, 0.0, 1.0, Level(delta));
        for (const SingleScaleRow& row : r.rows) {
            std::size_t n = project_set(product(support(a), support(b)), row.theta, Level(delta)).size();
            EXPECT_EQ(row.full_cover, static_cast<std::int64_t>(n));
            EXPECT_EQ(row.min_cover, row.full_cover);
            EXPECT_EQ(row.greedy_cover, row.full_cover);
        }
    }
}

TEST(SingleScale, MinimumMatchesSubsetEnumeration) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Measure2D::Atom> atoms;
        std::exponential_distribution<double> w(1.0);
        for (int i = 0; i < 10; ++i) {
            atoms.push_back({Cell2{static_cast<CellIndex>(rng() % 32), static_cast<CellIndex>(rng() % 32)}, w(rng)});
        }
        Measure2D mu = Measure2D(Level(5), atoms).normalized();
        GridSet1D e(Level(2), {0, 1, 2, 3, 4});
        double eta = 0.1 + 0.1 * static_cast<double>(rng() % 4);
        int delta = 2 + static_cast<int>(rng() % 4);
        SingleScaleResult r = single_scale_check(mu, e, 0.2, eta, 0.5, Level(delta));
        for (const SingleScaleRow& row : r.rows) {
            double target = std::exp2(-eta * delta) * (1.0 - 1e-12);
            EXPECT_EQ(row.min_cover, brute_min_cover(mu, row.theta, 5 - delta, target));
            EXPECT_LE(row.min_cover, row.greedy_cover);
            EXPECT_LE(row.greedy_cover, row.full_cover);
        }
    }
}

TEST(SingleScale, ArithmeticProgressionDirectionsStayBelowStrongerBounds) {
    ApFamily f = gen_ap_family(16, 0.25);
    Measure2D mu = product_measure(uniform_measure(f.a), uniform_measure(f.a));
    // E_16 n [0, 1] = {1/4, 1/2, 3/4, 1} on the level-2 direction grid.
    GridSet1D e(Level(2), {1, 2, 3, 4});
    SingleScaleResult r = single_scale_check(mu, e, 0.1, 0.0, 1.0, Level(8));
    EXPECT_NEAR(r.threshold, std::exp2(7.2), 1e-9);
    EXPECT_FALSE(r.witness.has_value());
    for (const SingleScaleRow& row : r.rows) EXPECT_LE(row.full_cover, 128);
    // Counts on E_16 are 76, 46, 100, 31; only 3/4 clears 2^6.4.
    SingleScaleResult weak = single_scale_check(mu, e, 0.2, 0.0, 1.0, Level(8));
    ASSERT_TRUE(weak.witness.has_value());
    EXPECT_EQ(*weak.witness, Direction(3, 2));
}

TEST(FiberDecomposition, SingleInteriorCell) {
    GridSet2D k(Level(6), {{8, 8}});
    FiberDecomposition d = fiber_decomposition_check(k, Direction(1, 2), Level(6), Level(2));
    EXPECT_EQ(d.c1, 1.0);
    EXPECT_EQ(d.c2, 1.0);
    EXPECT_EQ(d.cover_size, 1);
}

TEST(FiberDecomposition, FullSquare) {
    Measure2D mu = uniform_square(5, 32);
    for (int p : {0, 1, 3, 4}) {
        FiberDecomposition d = fiber_decomposition_check(support(mu), Direction(p, 2), Level(5), Level(2));
        EXPECT_GT(d.fibers, 0);
        EXPECT_GE(d.c1, 0.25);
        EXPECT_LE(d.c1, 8.0);
        EXPECT_GE(d.c2, 1.0);
        EXPECT_LE(d.c2, 8.0);
    }
}

TEST(FiberDecomposition, RandomProductsHaveSmallConstants) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GridSet1D a = gen_random_cantor(Level(6), 0.8, 2 * seed);
        GridSet1D b = gen_random_cantor(Level(6), 0.8, 2 * seed + 1);
        if (a.empty() || b.empty()) continue;
        Direction theta(static_cast<std::int64_t>(seed % 9), 3);
        FiberDecomposition d = fiber_decomposition_check(product(a, b), theta, Level(6), Level(3));
        EXPECT_LE(d.c1, 8.0) << "seed " << seed;
        EXPECT_LE(d.c2, 8.0) << "seed " << seed;
    }
}

TEST(FiberDecomposition, ScaleOrderIsValidated) {
    GridSet2D k(Level(6), {{8, 8}});
    EXPECT_THROW(fiber_decomposition_check(k, Direction(0, 0), Level(2), Level(4)), Error);
}

TEST(Prop3, UnitThresholdsHold) {
    std::mt19937_64 rng(74);
    Measure1D a = oracle::random_probability(rng, Level(6), oracle::random_cells(rng, 0, 63, 0.3));
    Measure2D mu = product_measure(a, a);
    Prop3Outcome o = prop3_probe(mu, Direction(1, 1), {.M = 1, .N = 1, .r = Level(6), .R = Level(3), .c = 1, .C = 1, .c_gamma = 1});
    EXPECT_TRUE(o.holds);
    EXPECT_NEAR(o.lhs, 1.0, 1e-12);
    EXPECT_NEAR(o.rhs1, 1.0, 1e-12);
}

TEST(Prop3, AboveCeilingLeftSideVanishes) {
    std::mt19937_64 rng(75);
    Measure1D a = oracle::random_probability(rng, Level(6), oracle::random_cells(rng, 0, 63, 0.5));
    Measure2D mu = product_measure(a, a);
    Prop3Outcome o = prop3_probe(mu, Direction(3, 2), {.M = 2, .N = 700, .r = Level(6), .R = Level(3), .c = 0.125, .C = 1, .c_gamma = 1});
    EXPECT_EQ(o.lhs, 0.0);
    EXPECT_TRUE(o.holds);
}

TEST(Prop3, InvalidThresholdsThrow) {
    Measure2D mu = uniform_square(4, 4);
    EXPECT_THROW(prop3_probe(mu, Direction(0, 0), {.M = 4, .N = 2, .r = Level(4), .R = Level(2)}), Error);
    EXPECT_THROW(prop3_probe(mu, Direction(0, 0), {.M = 1, .N = 2, .r = Level(2), .R = Level(4)}), Error);
}
