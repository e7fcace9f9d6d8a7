#include <benchmark/benchmark.h>

#include <vector>

#include "swarmtrack/network.hpp"
#include "swarmtrack/rng.hpp"

namespace {

std::vector<swarmtrack::Vec2> random_positions(std::size_t n) {
    auto rng = swarmtrack::make_rng(7, swarmtrack::Stream::placement);
    std::vector<swarmtrack::Vec2> points(n);
    for (auto& p : points) p = swarmtrack::uniform_point(rng, 25.0);
    return points;
}

void BM_KNearest(benchmark::State& state) {
    const auto positions = random_positions(static_cast<std::size_t>(state.range(0)));
    const int k = static_cast<int>(state.range(1));
    swarmtrack::NeighborTable table;
    for (auto _ : state) {
        swarmtrack::k_nearest(positions, k, table);
        benchmark::DoNotOptimize(table);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_KNearest)->Args({50, 2})->Args({50, 20})->Args({50, 49})->Args({200, 20});
