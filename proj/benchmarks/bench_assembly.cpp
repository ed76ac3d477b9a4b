#include <benchmark/benchmark.h>

#include "slspec/fd.hpp"
#include "slspec/iga.hpp"
#include "slspec/operators.hpp"

using namespace slspec;

namespace {

void BM_FdAssembly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int eta = static_cast<int>(state.range(1));
    const EulerCauchyCase ec = EulerCauchyCase::make(1.0);
    const OperatorSpec spec = ec.operator_spec();
    const Grid grid = map_grid(make_uniform_grid(ec.a, ec.b, n, eta), liouville_map(1.0));
    for (auto _ : state) {
        BandedMatrix m = assemble_fd(spec, grid, eta);
        benchmark::DoNotOptimize(m);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_FdAssembly)
    ->Args({1000, 1})
    ->Args({1000, 5})
    ->Args({1000, 15})
    ->Unit(benchmark::kMillisecond);

void BM_IgaAssembly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int eta = static_cast<int>(state.range(1));
    const EulerCauchyCase ec = EulerCauchyCase::make(1.0);
    const OperatorSpec spec = ec.operator_spec();
    const GridMap map = liouville_map(1.0);
    for (auto _ : state) {
        GalerkinPencil pencil = assemble_iga(spec, map, eta, n);
        benchmark::DoNotOptimize(pencil);
    }
}
BENCHMARK(BM_IgaAssembly)
    ->Args({500, 2})
    ->Args({500, 5})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
