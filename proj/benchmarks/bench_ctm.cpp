#include <benchmark/benchmark.h>

#include "kinwave/ctm.hpp"

using namespace kinwave;

namespace {

NetworkScenario merge_network(std::size_t cells) {
    NetworkScenario s;
    const FundamentalDiagram fd = FundamentalDiagram::greenshields(1.0, 4.0);
    for (int i = 0; i < 3; ++i) s.links.push_back({fd, 4.0, cells, {0.5}});
    s.junctions.push_back({{0, 1}, {2}, {{1.0}, {1.0}}});
    s.origins.push_back({0, BoundaryProfile::constant(0.6)});
    s.origins.push_back({1, BoundaryProfile::constant(0.8)});
    s.destinations.push_back({2, BoundaryProfile::constant(1.0)});
    s.dt = 0.8 * 4.0 / static_cast<double>(cells);
    s.horizon = 100.0 * s.dt;
    s.snapshot_stride = 1u << 30;
    return s;
}

void BM_SimulatorStep(benchmark::State& state) {
    Simulator sim(merge_network(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sim.step());
    state.SetItemsProcessed(state.iterations() * 3 * state.range(0));
}
BENCHMARK(BM_SimulatorStep)->Arg(50)->Arg(200)->Arg(1000);

void BM_FullRun(benchmark::State& state) {
    const NetworkScenario scenario = merge_network(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run(scenario));
}
BENCHMARK(BM_FullRun)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
