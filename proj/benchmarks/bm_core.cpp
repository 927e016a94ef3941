#include "conewave/bessel.hpp"
#include "conewave/kernels.hpp"
#include "conewave/radial.hpp"

#include <benchmark/benchmark.h>

using namespace conewave;

static void BM_BesselSeries(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel::bessel_j(2.5, x));
        x = (x < 4.0) ? x + 0.37 : 0.1;
    }
}
BENCHMARK(BM_BesselSeries);

static void BM_BesselSteed(benchmark::State& state) {
    const double nu = static_cast<double>(state.range(0));
    double x = 5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel::cylinder(nu, x));
        x = (x < 90.0) ? x + 1.7 : 5.0;
    }
}
BENCHMARK(BM_BesselSteed)->Arg(1)->Arg(10)->Arg(40);

static void BM_ResolventModeSum(benchmark::State& state) {
    const auto cs = build_spectrum_sphere(2, 45);
    const int J = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::resolvent_kernel(3, cs, 2.0, 0.5, 1.1, 1.4, J,
                                                           kernels::ResolventSign::Outgoing));
    }
}
BENCHMARK(BM_ResolventModeSum)->Arg(10)->Arg(40);

static void BM_RadialSolve(benchmark::State& state) {
    const auto cs = build_spectrum_sphere(2, 25);
    ConformalProfile ex;
    ex.kind = ProfileKind::Exponential;
    ex.c = 0.1;
    ex.x_match = 1.0;
    const int j = static_cast<int>(state.range(0));
    const auto spec = radial::make_spec(3, cs, ex, j, 4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(radial::solve_pair(spec, 2.0));
    }
}
BENCHMARK(BM_RadialSolve)->Arg(0)->Arg(8)->Arg(20);

BENCHMARK_MAIN();
