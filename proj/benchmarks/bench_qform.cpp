#include "gridramsey/qform.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace gridramsey;

void BM_BuildMatrix(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(qform::build_matrix(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildMatrix)->Arg(6)->Arg(8)->Arg(10);

void BM_MinRectangles55(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(qform::min_rectangles(5, 5));
}
BENCHMARK(BM_MinRectangles55);

void BM_Spectrum(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(qform::spectrum(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Spectrum)->Arg(5)->Arg(7);

}  // namespace
