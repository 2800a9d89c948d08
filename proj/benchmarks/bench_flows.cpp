#include <benchmark/benchmark.h>

#include "mnv/flows.hpp"
#include "mnv/surfaces.hpp"

using namespace mnv;

static void BM_SolveV(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto ct = clifford_torus(n, n);
    for (auto _ : state) benchmark::DoNotOptimize(solve_V(ct.data.U));
}
BENCHMARK(BM_SolveV)->Arg(64)->Arg(128);

static void BM_MnvRhs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto ct = clifford_torus(n, n);
    GridField V = solve_V(ct.data.U);
    for (auto _ : state) benchmark::DoNotOptimize(mnv_rhs(ct.data.U, V));
}
BENCHMARK(BM_MnvRhs)->Arg(64)->Arg(128);

static void BM_PsiRhs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto ct = clifford_torus(n, n);
    GridField V = solve_V(ct.data.U);
    for (auto _ : state)
        benchmark::DoNotOptimize(psi_rhs(ct.data.U, V, ct.data.psis));
}
BENCHMARK(BM_PsiRhs)->Arg(64)->Arg(128);

static void BM_Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto ct = clifford_torus(n, n);
    FlowState s = make_flow_state(std::move(ct.data));
    for (auto _ : state) {
        FlowState next = step(s, 1e-5, Scheme::IntegratingFactor);
        benchmark::DoNotOptimize(next);
    }
}
BENCHMARK(BM_Step)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_SynthesizeImmersion(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto ct = clifford_torus(n, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize_immersion(ct.data.psis));
}
BENCHMARK(BM_SynthesizeImmersion)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
