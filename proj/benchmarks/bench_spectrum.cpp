#include <benchmark/benchmark.h>

#include "slspec/eigensolve.hpp"
#include "slspec/fd.hpp"
#include "slspec/operators.hpp"
#include "slspec/symbol.hpp"

using namespace slspec;

namespace {

void BM_TridiagSpectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const EulerCauchyCase ec = EulerCauchyCase::make(1.0);
    const BandedMatrix L =
        assemble_fd(ec.operator_spec(), make_uniform_grid(ec.a, ec.b, n, 1), 1);
    const std::vector<double> d = L.diagonal();
    const std::vector<double> e = L.superdiagonal();
    for (auto _ : state) {
        EigenResult eig = eig_sym_tridiag(d, e);
        benchmark::DoNotOptimize(eig);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_TridiagSpectrum)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_GeneralSpectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const EulerCauchyCase ec = EulerCauchyCase::make(1.0);
    const Grid grid = map_grid(make_uniform_grid(ec.a, ec.b, n, 5), liouville_map(1.0));
    const BandedMatrix L = assemble_fd(ec.operator_spec(), grid, 5);
    for (auto _ : state) {
        EigenResult eig = eig_dense_general(L);
        benchmark::DoNotOptimize(eig);
    }
}
BENCHMARK(BM_GeneralSpectrum)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_Rearrangement(benchmark::State& state) {
    const int r = static_cast<int>(state.range(0));
    const EulerCauchyCase ec = EulerCauchyCase::make(1.0);
    const SymbolFunction sym =
        symbol_fd(ec.operator_spec(), GridMap::identity(ec.a, ec.b), 1);
    for (auto _ : state) {
        RearrangedSymbol rearr = rearrangement_by_sampling(sym, r);
        benchmark::DoNotOptimize(rearr);
    }
    state.SetComplexityN(r);
}
BENCHMARK(BM_Rearrangement)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_AnalyticInversion(benchmark::State& state) {
    const DistributionFunction dist = euler_cauchy_phi(1.0);
    for (auto _ : state) {
        double acc = 0.0;
        for (int k = 1; k <= 100; ++k) acc += invert_phi_sqrt(dist, k / 101.0);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_AnalyticInversion)->Unit(benchmark::kMicrosecond);

}  // namespace
