#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fslab/error.hpp"
#include "fslab/measures/operations.hpp"
#include "fslab/regularity/generators.hpp"
#include "oracles/oracles.hpp"

using namespace fslab;

namespace {

Measure1D weights(int level, std::vector<Measure1D::Atom> atoms) { return Measure1D(Level(level), std::move(atoms)); }

void expect_same_atoms(const Measure1D& a, const std::map<CellIndex, double>& b, double tol) {
    std::size_t nonzero = 0;
    for (const auto& [c, w] : b) {
        if (w != 0.0) ++nonzero;
        EXPECT_NEAR(a.mass_of(c), w, tol) << "cell " << c;
    }
    EXPECT_EQ(a.size(), nonzero);
}

}  // namespace

TEST(DeltaMeasure, MergesAndDropsZeros) {
    Measure1D mu = weights(3, {{2, 0.25}, {1, 0.5}, {2, 0.25}, {4, 0.0}});
    EXPECT_EQ(mu.size(), 2u);
    EXPECT_DOUBLE_EQ(mu.mass_of(2), 0.5);
    EXPECT_DOUBLE_EQ(mu.mass_of(4), 0.0);
    EXPECT_TRUE(mu.is_probability());
    EXPECT_THROW(weights(3, {{1, -1.0}}), Error);
}

TEST(Entropy, PointMassIsZero) { EXPECT_DOUBLE_EQ(entropy(point_mass(Level(6), 9), Level(6)), 0.0); }

TEST(Entropy, UniformOnPowerOfTwoCells) {
    for (int k = 0; k <= 8; ++k) {
        std::vector<CellIndex> cells;
        for (CellIndex i = 0; i < (CellIndex{1} << k); ++i) cells.push_back(i);
        Measure1D mu = uniform_measure(GridSet1D(Level(8), cells));
        EXPECT_NEAR(entropy(mu, Level(8)), k, 1e-12);
    }
}

TEST(Entropy, ThreeAtoms) {
    Measure1D mu = weights(4, {{0, 0.5}, {1, 0.25}, {2, 0.25}});
    EXPECT_DOUBLE_EQ(entropy(mu, Level(4)), 1.5);
}

TEST(Entropy, RejectsNonProbability) {
    EXPECT_THROW(entropy(weights(4, {{0, 0.5}}), Level(4)), Error);
    EXPECT_THROW(entropy(point_mass(Level(4), 0), Level(5)), Error);
}

TEST(Entropy, MatchesOracleAndJensen) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        int l = 3 + static_cast<int>(rng() % 8);
        Measure1D mu = oracle::random_probability(rng, Level(l), oracle::random_cells(rng, 0, (CellIndex{1} << l) - 1, 0.3));
        for (int t = 0; t <= l; ++t) {
            auto masses = oracle::masses_at(mu, l - t);
            double h = entropy(mu, Level(t));
            EXPECT_NEAR(h, oracle::entropy(masses), 1e-12);
            EXPECT_GE(h, -1e-15);
            EXPECT_LE(h, std::log2(static_cast<double>(masses.size())) + 1e-12);
        }
    }
}

TEST(ConditionalEntropy, TrivialCases) {
    std::mt19937_64 rng(22);
    Measure1D mu = oracle::random_probability(rng, Level(7), oracle::random_cells(rng, 0, 127, 0.5));
    EXPECT_NEAR(conditional_entropy(mu, Level(4), Level(4)), 0.0, 1e-15);
    std::vector<CellIndex> all;
    for (CellIndex i = 0; i < 64; ++i) all.push_back(i);
    EXPECT_NEAR(conditional_entropy(uniform_measure(GridSet1D(Level(6), all)), Level(6), Level(0)), 6.0, 1e-12);
    EXPECT_THROW(conditional_entropy(mu, Level(3), Level(4)), Error);
}

TEST(ConditionalEntropy, ChainRule) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        int l = 2 + static_cast<int>(rng() % 11);
        Measure1D mu = oracle::random_probability(rng, Level(l), oracle::random_cells(rng, -(CellIndex{1} << l), (CellIndex{1} << l) - 1, 0.2));
        int fine = static_cast<int>(rng() % (l + 1));
        int coarse = static_cast<int>(rng() % (fine + 1));
        double lhs = conditional_entropy(mu, Level(fine), Level(coarse));
        double rhs = entropy(mu, Level(fine)) - entropy(mu, Level(coarse));
        EXPECT_NEAR(lhs, rhs, 1e-9);
    }
}

TEST(ConditionalEntropy, PlanarChainRule) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        Measure1D a = oracle::random_probability(rng, Level(6), oracle::random_cells(rng, 0, 63, 0.3));
        Measure1D b = oracle::random_probability(rng, Level(6), oracle::random_cells(rng, 0, 63, 0.3));
        Measure2D mu = product_measure(a, b);
        EXPECT_NEAR(conditional_entropy(mu, Level(5), Level(2)), entropy(mu, Level(5)) - entropy(mu, Level(2)), 1e-9);
        EXPECT_NEAR(entropy(mu, Level(4)), entropy(a, Level(4)) + entropy(b, Level(4)), 1e-9);
    }
}

TEST(RestrictNormalize, SupersetLeavesMeasureUnchanged) {
    Measure1D mu = weights(3, {{1, 0.25}, {2, 0.75}});
    Measure1D out = restrict_normalize(mu, GridSet1D(Level(3), {0, 1, 2, 3}));
    EXPECT_DOUBLE_EQ(out.mass_of(1), 0.25);
    EXPECT_DOUBLE_EQ(out.mass_of(2), 0.75);
}

TEST(RestrictNormalize, UniformHalf) {
    Measure1D mu = uniform_measure(GridSet1D(Level(3), {0, 1, 2, 3}));
    Measure1D out = restrict_normalize(mu, GridSet1D(Level(3), {1, 3}));
    EXPECT_EQ(out.size(), 2u);
    EXPECT_DOUBLE_EQ(out.mass_of(1), 0.5);
    EXPECT_DOUBLE_EQ(out.mass_of(3), 0.5);
}

TEST(RestrictNormalize, NullSetThrows) {
    Measure1D mu = point_mass(Level(3), 2);
    EXPECT_THROW(restrict_normalize(mu, GridSet1D(Level(3), {1})), Error);
}

TEST(RestrictNormalize, RatiosPreservedAndCoarseSets) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 30; ++trial) {
        Measure1D mu = oracle::random_probability(rng, Level(8), oracle::random_cells(rng, 0, 255, 0.3));
        GridSet1D s(Level(5), oracle::random_cells(rng, 0, 31, 0.5));
        double mass = 0.0;
        for (const auto& [c, w] : mu.atoms()) {
            if (s.contains(c >> 3)) mass += w;
        }
        if (mass == 0.0) continue;
        EXPECT_NEAR(mass_on(mu, s), mass, 1e-12);
        Measure1D out = restrict_normalize(mu, s);
        EXPECT_TRUE(out.is_probability());
        for (const auto& [c, w] : mu.atoms()) {
            EXPECT_NEAR(out.mass_of(c), s.contains(c >> 3) ? w / mass : 0.0, 1e-12);
        }
    }
}

TEST(L2Norm, Basics) {
    EXPECT_DOUBLE_EQ(l2_norm(point_mass(Level(4), 3)), 1.0);
    std::vector<CellIndex> cells;
    for (CellIndex i = 0; i < 16; ++i) cells.push_back(i);
    EXPECT_DOUBLE_EQ(l2_norm(uniform_measure(GridSet1D(Level(4), cells))), 0.25);
}

TEST(L2Norm, UniformOnGeneratedSet) {
    for (std::int64_t n : {4, 16, 64}) {
        ApFamily f = gen_ap_family(n, 0.25);
        EXPECT_NEAR(l2_norm(uniform_measure(f.a)), 1.0 / std::sqrt(static_cast<double>(f.a.size())), 1e-15);
    }
}

TEST(Convolve, IdentityElement) {
    std::mt19937_64 rng(26);
    Measure1D nu = oracle::random_probability(rng, Level(6), oracle::random_cells(rng, 0, 63, 0.3));
    Measure1D out = convolve(point_mass(Level(6), 0), nu);
    EXPECT_EQ(out.size(), nu.size());
    for (const auto& [c, w] : nu.atoms()) EXPECT_DOUBLE_EQ(out.mass_of(c), w);
}

TEST(Convolve, TwoPointSquare) {
    Measure1D u = uniform_measure(GridSet1D(Level(5), {0, 1}));
    Measure1D out = convolve(u, u);
    EXPECT_DOUBLE_EQ(out.mass_of(0), 0.25);
    EXPECT_DOUBLE_EQ(out.mass_of(1), 0.5);
    EXPECT_DOUBLE_EQ(out.mass_of(2), 0.25);
    EXPECT_EQ(out.size(), 3u);
}

TEST(Convolve, LevelMismatchThrows) {
    EXPECT_THROW(convolve(point_mass(Level(3), 0), point_mass(Level(4), 0)), Error);
}

TEST(Convolve, MatchesDirectSummationAndNormBound) {
    std::mt19937_64 rng(27);
    for (int trial = 0; trial < 100; ++trial) {
        int l = 3 + static_cast<int>(rng() % 8);
        CellIndex n = CellIndex{1} << l;
        Measure1D mu = oracle::random_probability(rng, Level(l), oracle::random_cells(rng, -n, n - 1, 0.2));
        Measure1D nu = oracle::random_probability(rng, Level(l), oracle::random_cells(rng, -n, n - 1, 0.2));
        Measure1D out = convolve(mu, nu);
        expect_same_atoms(out, oracle::convolve(mu, nu), 1e-15);
        EXPECT_NEAR(out.total_mass(), mu.total_mass() * nu.total_mass(), 1e-12);
        EXPECT_LE(l2_norm(out), l2_norm(mu) + 1e-12);
        Measure1D swapped = convolve(nu, mu);
        for (const auto& [c, w] : out.atoms()) EXPECT_NEAR(swapped.mass_of(c), w, 1e-15);
    }
}

TEST(Convolve, DyadicWeightsAreExactAndCommutative) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        int l = 3 + static_cast<int>(rng() % 8);
        CellIndex n = CellIndex{1} << l;
        Measure1D mu = oracle::dyadic_weight_measure(rng, Level(l), oracle::random_cells(rng, -n, n - 1, 0.2));
        Measure1D nu = oracle::dyadic_weight_measure(rng, Level(l), oracle::random_cells(rng, -n, n - 1, 0.2));
        Measure1D out = convolve(mu, nu);
        Measure1D swapped = convolve(nu, mu);
        expect_same_atoms(out, oracle::convolve(mu, nu), 0.0);
        ASSERT_EQ(out.size(), swapped.size());
        for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out.atoms()[i], swapped.atoms()[i]);
        EXPECT_EQ(out.total_mass(), mu.total_mass() * nu.total_mass());
    }
}

TEST(Convolve, FftAgreesWithDirect) {
    std::mt19937_64 rng(28);
    for (int trial = 0; trial < 10; ++trial) {
        int l = 10 + static_cast<int>(rng() % 4);
        CellIndex n = CellIndex{1} << l;
        Measure1D mu = oracle::random_probability(rng, Level(l), oracle::random_cells(rng, -n, n - 1, 0.4));
        Measure1D nu = oracle::random_probability(rng, Level(l), oracle::random_cells(rng, 0, n - 1, 0.4));
        Measure1D direct = convolve(mu, nu, ConvolutionMethod::Direct);
        Measure1D fft = convolve(mu, nu, ConvolutionMethod::Fft);
        double peak = 0.0;
        for (const auto& [c, w] : direct.atoms()) peak = std::max(peak, w);
        for (const auto& [c, w] : direct.atoms()) {
            if (w > 1e-14 * peak) EXPECT_NEAR(fft.mass_of(c), w, 1e-10);
        }
        for (const auto& [c, w] : fft.atoms()) EXPECT_NEAR(direct.mass_of(c), w, 1e-10);
    }
}

TEST(PushProject, HorizontalDirectionTakesFirstCoordinate) {
    std::mt19937_64 rng(29);
    Measure1D a = oracle::random_probability(rng, Level(5), oracle::random_cells(rng, 0, 31, 0.3));
    Measure1D b = oracle::random_probability(rng, Level(5), oracle::random_cells(rng, 0, 31, 0.3));
    Measure1D out = push_project(product_measure(a, b), Direction(0, 0));
    for (const auto& [c, w] : a.atoms()) EXPECT_NEAR(out.mass_of(c), w, 1e-15);
    EXPECT_EQ(out.size(), a.size());
}

TEST(PushProject, PointMass) {
    Measure2D mu(Level(6), {{Cell2{5, 11}, 1.0}});
    Measure1D out = push_project(mu, Direction(3, 2));
    EXPECT_EQ(out.size(), 1u);
    EXPECT_DOUBLE_EQ(out.mass_of(5 + (33 >> 2)), 1.0);
}

TEST(PushProject, ProductEqualsConvolutionRouteExactly) {
    std::mt19937_64 rng(30);
    for (int trial = 0; trial < 50; ++trial) {
        int l = 4 + static_cast<int>(rng() % 6);
        CellIndex n = CellIndex{1} << l;
        Measure1D a = oracle::dyadic_weight_measure(rng, Level(l), oracle::random_cells(rng, 0, n - 1, 0.3));
        Measure1D b = oracle::dyadic_weight_measure(rng, Level(l), oracle::random_cells(rng, 0, n - 1, 0.3));
        int q = static_cast<int>(rng() % 6);
        Direction theta(static_cast<std::int64_t>(rng() % ((std::uint64_t{1} << q) + 1)), q);
        Measure1D lhs = push_project(product_measure(a, b), theta);
        Measure1D rhs = convolve(a, scale_round(b, theta), ConvolutionMethod::Direct);
        ASSERT_EQ(lhs.size(), rhs.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            EXPECT_EQ(lhs.atoms()[i].first, rhs.atoms()[i].first);
            EXPECT_EQ(lhs.atoms()[i].second, rhs.atoms()[i].second);
        }
    }
}
