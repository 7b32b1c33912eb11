// Serial vs OpenMP timings for the batch drivers.

#include <benchmark/benchmark.h>

#include "paraqed/dynamics.hpp"
#include "paraqed/photon.hpp"
#include "paraqed/sweep.hpp"

using namespace paraqed;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void rate_sweep_exact(benchmark::State& state) {
    const auto us = linspace(0.2, 20.0, 400);
    for (auto _ : state) benchmark::DoNotOptimize(rate_sweep(CavityParams{}, us, true, true, mode(state)));
}

void alpha_sweep_n(benchmark::State& state) {
    const auto us = linspace(0.5, 15.0, 200);
    for (auto _ : state) benchmark::DoNotOptimize(alpha_sweep(CavityParams{}, us, {0, 1, 10}, false, mode(state)));
}

void contour_trace(benchmark::State& state) {
    CavityParams p;
    p.u = specfun::pi / 2;
    p.gamma_s_T = 5.0;
    const auto ts = linspace(0.0, 5.0, 101);
    for (auto _ : state)
        benchmark::DoNotOptimize(decay_trace(p, ts, TraceMethod::contour_oracle, Branch::retarded, mode(state)));
}

void path_trace(benchmark::State& state) {
    CavityParams p;
    p.u = specfun::pi / 2;
    p.gamma_s_T = 0.01;
    const auto ts = linspace(0.0, 100.0, 5001);
    for (auto _ : state)
        benchmark::DoNotOptimize(decay_trace(p, ts, TraceMethod::path_series, Branch::retarded, mode(state)));
}

void transverse(benchmark::State& state) {
    CavityParams p;
    p.u = specfun::pi / 2;
    const auto ys = linspace(0.0, 20.0, 20001);
    for (auto _ : state) benchmark::DoNotOptimize(transverse_distribution(p, ys, mode(state)));
}

} // namespace

// Argument 0 = serial, 1 = parallel.
BENCHMARK(rate_sweep_exact)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(alpha_sweep_n)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(contour_trace)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(path_trace)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(transverse)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
