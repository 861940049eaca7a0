#include "gridramsey/search.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace gridramsey;

void BM_FindColoring46(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(search::find_coloring(2, Grid({4, 6})));
}
BENCHMARK(BM_FindColoring46);

void BM_Exhaust55(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(search::find_coloring(2, Grid({5, 5})));
}
BENCHMARK(BM_Exhaust55);

void BM_MinBoxes37(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(search::min_mono_boxes_exact(2, Grid({3, 7})));
}
BENCHMARK(BM_MinBoxes37);

void BM_MoserTardos(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(search::moser_tardos_color(2, Grid({4, 6}), ++seed, 200000));
}
BENCHMARK(BM_MoserTardos);

}  // namespace
