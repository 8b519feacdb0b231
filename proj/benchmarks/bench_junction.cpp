#include <benchmark/benchmark.h>

#include <random>

#include "kinwave/junction.hpp"
#include "kinwave/oracle.hpp"

using namespace kinwave;

namespace {

oracle::RandomInstance instance_for(std::size_t m, std::size_t n) {
    std::mt19937_64 rng(m * 1000 + n);
    return oracle::random_instance(rng, m, n);
}

void BM_CriticalLevelPrefix(benchmark::State& state) {
    const auto inst = instance_for(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(critical_demand_level(inst.junction, inst.mu, inst.nu));
}
BENCHMARK(BM_CriticalLevelPrefix)->Args({2, 2})->Args({4, 4})->Args({8, 4})->Args({16, 4});

void BM_CriticalLevelEnumerated(benchmark::State& state) {
    const auto inst = instance_for(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::g_exhaustive(inst.junction, inst.mu, inst.nu));
}
BENCHMARK(BM_CriticalLevelEnumerated)->Args({2, 2})->Args({4, 4})->Args({8, 4})->Args({16, 4});

void BM_JunctionFlux(benchmark::State& state) {
    const auto inst = instance_for(state.range(0), state.range(1));
    std::vector<double> d(inst.mu.size()), s(inst.nu.size());
    for (std::size_t a = 0; a < d.size(); ++a)
        d[a] = inst.mu[a] * inst.junction.upstream_capacity[a];
    for (std::size_t b = 0; b < s.size(); ++b)
        s[b] = inst.nu[b] * inst.junction.downstream_capacity[b];
    for (auto _ : state)
        benchmark::DoNotOptimize(junction_flux(inst.junction, d, s));
}
BENCHMARK(BM_JunctionFlux)->Args({2, 2})->Args({4, 4})->Args({8, 4});

}  // namespace
