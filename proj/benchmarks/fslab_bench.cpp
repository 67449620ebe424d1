#include <benchmark/benchmark.h>

#include <random>

#include "fslab/content/content.hpp"
#include "fslab/measures/operations.hpp"
#include "fslab/projections/multiplicity.hpp"
#include "fslab/projections/projection.hpp"
#include "fslab/regularity/generators.hpp"

using namespace fslab;

namespace {

GridSet2D random_planar(int level, double keep, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CellIndex n = CellIndex{1} << level;
    std::vector<Cell2> cells;
    for (CellIndex i = 0; i < n; ++i) {
        for (CellIndex j = 0; j < n; ++j) {
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < keep) cells.push_back({i, j});
        }
    }
    return GridSet2D(Level(level), cells);
}

Measure1D random_measure(int level, double keep, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Measure1D::Atom> atoms;
    for (CellIndex k = 0; k < (CellIndex{1} << level); ++k) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < keep) atoms.push_back({k, 1.0 + u});
    }
    return Measure1D(Level(level), atoms).normalized();
}

void BM_DyadicContent(benchmark::State& state) {
    GridSet1D s = gen_random_cantor(Level(static_cast<int>(state.range(0))), 0.8, 7);
    for (auto _ : state) benchmark::DoNotOptimize(dyadic_content(s, Exponent(0.5)).value);
    state.counters["cells"] = static_cast<double>(s.size());
}
BENCHMARK(BM_DyadicContent)->Arg(10)->Arg(14)->Arg(18);

void BM_DyadicContentFloat(benchmark::State& state) {
    GridSet1D s = gen_random_cantor(Level(static_cast<int>(state.range(0))), 0.8, 7);
    for (auto _ : state) benchmark::DoNotOptimize(dyadic_content(s, Exponent(0.6309297535714574)).value);
}
BENCHMARK(BM_DyadicContentFloat)->Arg(14)->Arg(18);

void BM_MaxFrostman(benchmark::State& state) {
    GridSet1D s = gen_random_cantor(Level(static_cast<int>(state.range(0))), 0.8, 7);
    for (auto _ : state) benchmark::DoNotOptimize(max_frostman(s, Exponent(0.5)).mass);
}
BENCHMARK(BM_MaxFrostman)->Arg(10)->Arg(14);

void BM_Multiplicities(benchmark::State& state) {
    int level = static_cast<int>(state.range(0));
    GridSet2D k = random_planar(level, 0.3, 11);
    ScaleWindow w = ScaleWindow::levels(Level(level), Level(0));
    for (auto _ : state) benchmark::DoNotOptimize(multiplicities(k, Direction(5, 4), w).size());
    state.counters["cells"] = static_cast<double>(k.size());
}
BENCHMARK(BM_Multiplicities)->Arg(5)->Arg(6)->Arg(7);

void BM_AffineSumset(benchmark::State& state) {
    ApFamily f = gen_ap_family(state.range(0), 0.25);
    for (auto _ : state) benchmark::DoNotOptimize(affine_sumset(f.a, f.e, f.a, f.a.level()).size());
}
BENCHMARK(BM_AffineSumset)->Arg(16)->Arg(64)->Arg(256);

void BM_ProjectProduct(benchmark::State& state) {
    SelfSimilarSet s = gen_self_similar({.branches = 4, .contraction_level = 4, .depth = 4});
    GridSet2D k = product(s.set, s.set);
    for (auto _ : state) benchmark::DoNotOptimize(project_set(k, Direction(77, 8), Level(16)).size());
}
BENCHMARK(BM_ProjectProduct);

void BM_Convolve(benchmark::State& state) {
    int level = static_cast<int>(state.range(0));
    auto method = state.range(1) == 0 ? ConvolutionMethod::Direct : ConvolutionMethod::Fft;
    Measure1D mu = random_measure(level, 0.5, 3);
    Measure1D nu = random_measure(level, 0.5, 4);
    for (auto _ : state) benchmark::DoNotOptimize(convolve(mu, nu, method).size());
}
BENCHMARK(BM_Convolve)->Args({8, 0})->Args({8, 1})->Args({12, 0})->Args({12, 1})->Args({16, 1});

}  // namespace

BENCHMARK_MAIN();
