#include "gridramsey/bounds.hpp"
#include "gridramsey/grid.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace gridramsey;

Coloring random_coloring(const Grid& grid, std::int64_t colors, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Coloring::Color> cells(static_cast<std::size_t>(grid.volume()));
    for (auto& cell : cells)
        cell = static_cast<Coloring::Color>(rng() % static_cast<std::uint64_t>(colors));
    return Coloring(grid, colors, std::move(cells));
}

void BM_CountBoxes2D(benchmark::State& state) {
    const Coloring coloring = random_coloring(Grid({12, 30}), 2, 7);
    for (auto _ : state) benchmark::DoNotOptimize(count_monochromatic_boxes(coloring));
}
BENCHMARK(BM_CountBoxes2D);

void BM_CountBoxesMuGrid(benchmark::State& state) {
    const Coloring coloring = bounds::minimal_coloring(2, 3);  // [3,7,127]
    for (auto _ : state) benchmark::DoNotOptimize(count_monochromatic_boxes(coloring));
}
BENCHMARK(BM_CountBoxesMuGrid);

void BM_DeltaSequence(benchmark::State& state) {
    const Grid grid = bounds::corollary_grid(5, 6);
    for (auto _ : state) benchmark::DoNotOptimize(bounds::delta_sequence(5, grid));
}
BENCHMARK(BM_DeltaSequence);

}  // namespace
