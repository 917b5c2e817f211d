#include <benchmark/benchmark.h>

#include <cmath>

#include "fracsch/ensemble.hpp"
#include "fracsch/fracalc.hpp"
#include "fracsch/mlf.hpp"
#include "fracsch/oracle.hpp"
#include "fracsch/solver.hpp"
#include "fracsch/spectral.hpp"

using namespace fracsch;

// |z| = state.range(0) on the negative imaginary ray.
static void BM_MlEval(benchmark::State& state) {
    const cplx z(0.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mlf::ml_eval({0.6, 1.0}, z));
}
BENCHMARK(BM_MlEval)->Arg(1)->Arg(10)->Arg(30)->Arg(1000);

static void BM_MlSeriesMultiprecision(benchmark::State& state) {
    const mlf::MLParams p{0.5, 1.0};
    const cplx z(0.0, -1.5 * mlf::series_radius(p));
    for (auto _ : state) benchmark::DoNotOptimize(mlf::ml_series(p, z));
}
BENCHMARK(BM_MlSeriesMultiprecision)->Unit(benchmark::kMicrosecond);

static void BM_OracleHighprec(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(oracle::highprec_ml(0.6, 1.0, cplx(0.0, -10.0)));
}
BENCHMARK(BM_OracleHighprec)->Unit(benchmark::kMicrosecond);

static void BM_RlIntegral(benchmark::State& state) {
    const TimeGrid g(1.0, static_cast<int>(state.range(0)));
    const Trajectory f = ensemble::random_trajectory({1, 1, 0.0, 4}, 0, g);
    for (auto _ : state) benchmark::DoNotOptimize(fracalc::rl_integral(0.6, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RlIntegral)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oNSquared)->Unit(benchmark::kMicrosecond);

static void BM_PropagatorSetup(benchmark::State& state) {
    const solver::SolveConfig cfg(0.6, TimeGrid(1.0, 1024), DiagonalOperator::dirichlet_laplacian_1d(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(solver::Propagator(cfg));
}
BENCHMARK(BM_PropagatorSetup)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SolveFull(benchmark::State& state) {
    const solver::SolveConfig cfg(0.6, TimeGrid(1.0, static_cast<int>(state.range(0))), DiagonalOperator::dirichlet_laplacian_1d(16));
    const ensemble::EnsembleSpec spec{1, 1, 1.0, 4};
    const SpectralVector u0 = ensemble::random_vector(spec, 0, cfg.op);
    const SpectralField f = ensemble::random_field(spec, 0, cfg.op, cfg.grid);
    const solver::Propagator prop(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(prop.full(u0, f));
}
BENCHMARK(BM_SolveFull)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_InterpNorm(benchmark::State& state) {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(static_cast<int>(state.range(0)));
    const SpectralVector x = ensemble::random_vector({1, 1, 1.5, 4}, 0, A);
    for (auto _ : state) benchmark::DoNotOptimize(spectral::interp_norm(A, x, 0.6, 4.0));
}
BENCHMARK(BM_InterpNorm)->Arg(16)->Arg(256)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
