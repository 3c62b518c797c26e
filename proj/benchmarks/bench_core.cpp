#include <benchmark/benchmark.h>

#include <random>

#include "erdim/algebra.hpp"
#include "erdim/complexity.hpp"
#include "erdim/lindblad.hpp"
#include "erdim/trotter.hpp"

namespace {

erdim::ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    erdim::ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = erdim::Complex(g(rng), g(rng));
    erdim::ComplexMatrix h = a + a.adjoint();
    h *= erdim::Complex(0.5 / n, 0.0);
    return h;
}

void BM_Matexp(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const int n = static_cast<int>(state.range(0));
    erdim::ComplexMatrix h = random_hermitian(n, rng);
    h *= erdim::Complex(0.0, -1.0);
    for (auto _ : state) benchmark::DoNotOptimize(erdim::matexp(h));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Matexp)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_Svd(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    const int n = static_cast<int>(state.range(0));
    erdim::ComplexMatrix a(3 * n, n);
    for (auto& z : a.data()) z = erdim::Complex(g(rng), g(rng));
    for (auto _ : state) benchmark::DoNotOptimize(erdim::svd(a));
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(8, 64);

void BM_Superoperator(benchmark::State& state) {
    erdim::PseudomodeParams p;
    p.omega0 = 2.0;
    p.omega = 2.0;
    p.omega_rabi = 0.35;
    p.gamma_decay = 2.5;
    p.cutoff = static_cast<int>(state.range(0));
    const auto gen = erdim::pseudomode_generator(p);
    for (auto _ : state) benchmark::DoNotOptimize(erdim::build_superoperator(gen));
}
BENCHMARK(BM_Superoperator)->RangeMultiplier(2)->Range(2, 16);

void BM_EffectiveDimension(benchmark::State& state) {
    erdim::PhysicalParams p;
    p.n = 1;
    p.gamma = 0.05;
    p.tau = 1.0;
    p.big_t = 4.0;
    p.epsilon = 0.05;
    for (auto _ : state) benchmark::DoNotOptimize(erdim::effective_dimension(p));
}
BENCHMARK(BM_EffectiveDimension);

void BM_Heatmap32(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(erdim::heatmap(1e-2, 10.0, 1e-3, 1e-1, 32, 0.05, 1));
}
BENCHMARK(BM_Heatmap32);

void BM_TrnSchmidt(benchmark::State& state) {
    std::mt19937_64 rng(3);
    erdim::CoupledModel m;
    m.hs = random_hermitian(2, rng);
    m.hr = random_hermitian(4, rng);
    m.couplings = {{random_hermitian(2, rng), random_hermitian(4, rng)}};
    m.gamma = 0.05;
    erdim::ComplexMatrix ss(2, 2), sr(4, 4);
    ss(0, 0) = 1.0;
    sr(0, 0) = 1.0;
    m.initial = {{ss, sr}};
    const auto trn = erdim::build_trn(m, 0.1, 16);
    for (auto _ : state) benchmark::DoNotOptimize(erdim::schmidt_cut(trn, 8));
}
BENCHMARK(BM_TrnSchmidt);

}  // namespace

BENCHMARK_MAIN();
