#include <benchmark/benchmark.h>

#include "rhtunnel/verification.hpp"

using namespace rhtunnel;

namespace {

const DerivedGeometry& reference_geometry() {
    static const DerivedGeometry g = derive_geometry({5.0, 10.0, 1000.0});
    return g;
}

const Material& reference_material() {
    static const Material m = make_material(20.0, 0.8, 20000.0, 0.3);
    return m;
}

const FieldModel& reference_model() {
    static const FieldModel fm = make_field_model(
        run_solver(reference_geometry(), reference_material(), SolverConfig{}), reference_geometry(),
        reference_material(), true);
    return fm;
}

void BM_Solve(benchmark::State& state) {
    SolverConfig cfg;
    cfg.N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_solver(reference_geometry(), reference_material(), cfg));
}
BENCHMARK(BM_Solve)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_PointEvaluation(benchmark::State& state) {
    const auto& fm = reference_model();
    const cplx zeta(-0.4, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(eval_physical(zeta, fm));
}
BENCHMARK(BM_PointEvaluation);

void BM_Grid(benchmark::State& state) {
    const auto& fm = reference_model();
    const int n = static_cast<int>(state.range(0));
    const GridSpec spec{0.0, 40.0, -40.0, 0.0, n, n};
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(spec, fm, 1));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Grid)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_Residuals(benchmark::State& state) {
    const auto& fm = reference_model();
    for (auto _ : state) benchmark::DoNotOptimize(residual_report(fm, 2000));
}
BENCHMARK(BM_Residuals)->Unit(benchmark::kMillisecond);

void BM_FullCase(benchmark::State& state) {
    for (auto _ : state) {
        const auto sol = run_solver(reference_geometry(), reference_material(), SolverConfig{});
        const auto fm = make_field_model(sol, reference_geometry(), reference_material(), true);
        benchmark::DoNotOptimize(sample_surface(fm, 720));
        benchmark::DoNotOptimize(sample_tunnel(fm, 720));
        benchmark::DoNotOptimize(residual_report(fm, 2000));
    }
}
BENCHMARK(BM_FullCase)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
