#include <benchmark/benchmark.h>

#include <random>

#include "mnv/spectral.hpp"

using namespace mnv;

namespace {

GridField random_field(const PeriodicLattice& lat, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(lat.size());
    for (auto& x : v) x = cplx(g(rng), g(rng));
    return GridField(lat, SpinCharacter{}, std::move(v));
}

}  // namespace

static void BM_DerivativeZ(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), n, n);
    std::mt19937_64 rng(1);
    GridField f = random_field(lat, rng);
    for (auto _ : state) benchmark::DoNotOptimize(d_z(f));
    state.SetItemsProcessed(state.iterations() * lat.size());
}
BENCHMARK(BM_DerivativeZ)->Arg(64)->Arg(128)->Arg(256);

static void BM_DealiasedPair(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), n, n);
    std::mt19937_64 rng(2);
    GridField a = random_field(lat, rng);
    GridField b = random_field(lat, rng);
    for (auto _ : state) benchmark::DoNotOptimize(dealiased_product(a, b));
    state.SetItemsProcessed(state.iterations() * lat.size());
}
BENCHMARK(BM_DealiasedPair)->Arg(64)->Arg(128)->Arg(256);

static void BM_DealiasedTriple(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), n, n);
    std::mt19937_64 rng(3);
    GridField a = random_field(lat, rng);
    GridField b = random_field(lat, rng);
    GridField c = random_field(lat, rng);
    for (auto _ : state) benchmark::DoNotOptimize(dealiased_product(a, b, c));
    state.SetItemsProcessed(state.iterations() * lat.size());
}
BENCHMARK(BM_DealiasedTriple)->Arg(64)->Arg(128);

static void BM_DbarInverse(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), n, n);
    std::mt19937_64 rng(4);
    GridField f = random_field(lat, rng);
    f = f - GridField::constant(lat, mean(f));
    for (auto _ : state) benchmark::DoNotOptimize(dbar_inverse(f));
    state.SetItemsProcessed(state.iterations() * lat.size());
}
BENCHMARK(BM_DbarInverse)->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
