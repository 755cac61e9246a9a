#include <benchmark/benchmark.h>

#include "growthlab/gallery/model.hpp"
#include "growthlab/growth/integrals.hpp"

using namespace growthlab;

namespace {

growth::QuadratureSpec spec(int radial, int angular)
{
    growth::QuadratureSpec q;
    q.radial_order = radial;
    q.angular_order = angular;
    return q;
}

void BM_BallKernel(benchmark::State& state, const char* name)
{
    const growth::GrowthIntegrator g(gallery::gallery(name), spec(static_cast<int>(state.range(0)), 16));
    for (auto _ : state)
        benchmark::DoNotOptimize(g.ball(3.0));
}

void BM_BallReference(benchmark::State& state, const char* name)
{
    const growth::GrowthIntegrator g(gallery::gallery(name), spec(static_cast<int>(state.range(0)), 16));
    for (auto _ : state)
        benchmark::DoNotOptimize(growth::reference::ball(g.model(), g.rules(), 3.0));
}

void BM_SphereKernel(benchmark::State& state, const char* name)
{
    const growth::GrowthIntegrator g(gallery::gallery(name), spec(static_cast<int>(state.range(0)), 16));
    for (auto _ : state)
        benchmark::DoNotOptimize(g.sphere(3.0));
}

void BM_SphereReference(benchmark::State& state, const char* name)
{
    const growth::GrowthIntegrator g(gallery::gallery(name), spec(static_cast<int>(state.range(0)), 16));
    for (auto _ : state)
        benchmark::DoNotOptimize(growth::reference::sphere(g.model(), g.rules(), 3.0));
}

} // namespace

BENCHMARK_CAPTURE(BM_BallKernel, sl2c, "sl2c")->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_BallReference, sl2c, "sl2c")->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_SphereKernel, sl2c, "sl2c")->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_SphereReference, sl2c, "sl2c")->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_BallKernel, iwasawa, "iwasawa")->Arg(32);
BENCHMARK_CAPTURE(BM_BallReference, iwasawa, "iwasawa")->Arg(32);

BENCHMARK_MAIN();
