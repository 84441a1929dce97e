#include <benchmark/benchmark.h>

#include "aca/search.hpp"

namespace {

void BM_SearchSteinhaus(benchmark::State& state) {
    const aca::Modulus m(static_cast<std::uint64_t>(state.range(0)));
    aca::SearchOptions opts;
    opts.count_only = true;
    opts.symmetry = state.range(2) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(aca::search_balanced(m, state.range(1), opts).count);
}
BENCHMARK(BM_SearchSteinhaus)->Args({15, 5, 0})->Args({7, 6, 0})->Args({7, 6, 1})->Args({5, 9, 0});

void BM_SteinhausTriangle(benchmark::State& state) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = static_cast<std::int64_t>(i * 7 + 3);
    for (auto _ : state) benchmark::DoNotOptimize(aca::steinhaus(row, aca::Modulus(101)).multiset());
}
BENCHMARK(BM_SteinhausTriangle)->Arg(64)->Arg(512);

}  // namespace
