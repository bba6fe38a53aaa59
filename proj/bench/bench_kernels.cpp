// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <string>

#include <omp.h>

#include "telefid/fidelity.hpp"
#include "telefid/optimize.hpp"
#include "telefid/quadrature.hpp"
#include "telefid/sweep.hpp"

using namespace telefid;

namespace {

quad::Execution execution(const benchmark::State& state)
{
    return state.range(0) == 0 ? quad::Execution::serial : quad::Execution::parallel;
}

void BM_Integrate2D(benchmark::State& state)
{
    const auto f = [](double x, double y) {
        return std::exp(cplx(-0.3 * x * x - 0.2 * y * y, 0.7 * x * y + 0.1 * x));
    };
    quad::Options opts;
    opts.execution = execution(state);
    for (auto _ : state) benchmark::DoNotOptimize(quad::integrate_2d(f, quad::Window2D::square(25.0), opts));
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_Integrate2D)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FidelityQuadrature(benchmark::State& state)
{
    const ResourceSpec spec = SqueezedCat{0.9, M_PI, 0.4, 0.0, 1.2, 0.0};
    const NoiseParams noise{0.3, 0.0, 0.05};
    quad::Options opts = fidelity_options();
    opts.execution = execution(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(fidelity_quadrature({cplx(1.0, 0.5)}, spec, noise, FixedGain{0.9}, opts));
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_FidelityQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Sweeps and optimizer grids parallelize through the OpenMP runtime; range(0) is the
// thread count, 0 meaning all processors.
int threads(const benchmark::State& state)
{
    return state.range(0) == 0 ? omp_get_num_procs() : int(state.range(0));
}

void BM_FigurePreset(benchmark::State& state)
{
    omp_set_num_threads(threads(state));
    for (auto _ : state) benchmark::DoNotOptimize(run_figure_preset("5-I"));
    state.SetLabel(std::to_string(threads(state)) + " threads");
    omp_set_num_threads(omp_get_num_procs());
}
BENCHMARK(BM_FigurePreset)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_GainAverageCat(benchmark::State& state)
{
    omp_set_num_threads(threads(state));
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_gain_average(Family::SqueezedCat, 0.8, {0.3, 0.0, 0.05}, {10.0}));
    state.SetLabel(std::to_string(threads(state)) + " threads");
    omp_set_num_threads(omp_get_num_procs());
}
BENCHMARK(BM_GainAverageCat)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
