#include <benchmark/benchmark.h>

#include "aca/orbit.hpp"
#include "aca/simplex.hpp"

namespace {

using namespace aca;

const Modulus kMod(5);

void BM_ClosedFormPoint(benchmark::State& state) {
    const auto w = pascal_weights(1, kMod);
    const ArithmeticSeed seed{Residue(0, kMod), {Residue(1, kMod)}};
    const std::int64_t j = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(closed_form(w, seed, OrbitPoint{{3}, j}));
}
BENCHMARK(BM_ClosedFormPoint)->Arg(10)->Arg(100)->Arg(1000);

void BM_ConePoint(benchmark::State& state) {
    const auto w = pascal_weights(1, kMod);
    const auto seed = Seed::arithmetic(Residue(0, kMod), {Residue(1, kMod)});
    const std::int64_t j = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(cone_value(w, seed, OrbitPoint{{3}, j}));
}
BENCHMARK(BM_ConePoint)->Arg(10)->Arg(100)->Arg(1000);

void BM_TriangleClosedRows(benchmark::State& state) {
    const auto w = pascal_weights(1, kMod);
    const ArithmeticOrbit orbit(w, ArithmeticSeed{Residue(0, kMod), {Residue(1, kMod)}});
    const SimplexSpec spec{{0, 0}, {1, 1}, state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(extract(orbit, spec));
}
BENCHMARK(BM_TriangleClosedRows)->Arg(50)->Arg(200);

void BM_TriangleTabulated(benchmark::State& state) {
    const auto w = pascal_weights(1, kMod);
    const auto seed = Seed::arithmetic(Residue(0, kMod), {Residue(1, kMod)});
    const std::int64_t s = state.range(0);
    const SimplexSpec spec{{0, 0}, {1, 1}, s};
    for (auto _ : state) {
        const TabulatedOrbit orbit(w, seed, {0}, {s - 1}, s - 1);
        benchmark::DoNotOptimize(extract(orbit, spec));
    }
}
BENCHMARK(BM_TriangleTabulated)->Arg(50)->Arg(200);

}  // namespace
