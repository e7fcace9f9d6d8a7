#include <benchmark/benchmark.h>

#include "swarmtrack/engine.hpp"

namespace {

// Steps per second of the default 50-agent swarm at a given degree.
void BM_Step(benchmark::State& state) {
    swarmtrack::SwarmConfig cfg;
    cfg.degree = static_cast<int>(state.range(0));
    swarmtrack::Simulation sim(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim.step());
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_StepAsync(benchmark::State& state) {
    swarmtrack::SwarmConfig cfg;
    cfg.update_mode = swarmtrack::UpdateMode::async;
    swarmtrack::Simulation sim(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim.step());
    }
    state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(BM_Step)->Arg(2)->Arg(20)->Arg(49);
BENCHMARK(BM_StepAsync);
