#include <benchmark/benchmark.h>

#include "ephemera/arena.hpp"
#include "ephemera/bt.hpp"
#include "ephemera/experiment.hpp"
#include "ephemera/rng.hpp"

namespace {

using namespace ephemera;

void BM_SerializeAgentTree(benchmark::State& state) {
    const auto tree = bt::assemble_agent_tree(ColorSet::all());
    for (auto _ : state) benchmark::DoNotOptimize(bt::serialize(tree));
}
BENCHMARK(BM_SerializeAgentTree);

void BM_ParseAgentTree(benchmark::State& state) {
    const auto text = bt::serialize(bt::assemble_agent_tree(ColorSet::all()));
    for (auto _ : state) benchmark::DoNotOptimize(bt::parse(text));
}
BENCHMARK(BM_ParseAgentTree);

void BM_Tick(benchmark::State& state) {
    const auto tree = bt::assemble_agent_tree({Color::Red, Color::Blue});
    Perception perception;
    perception.targets.push_back({0, Color::Yellow, Cell{3, 3}, 3});
    perception.sees_unknown = true;
    for (auto _ : state) {
        bt::Blackboard bb{perception, {Color::Red, Color::Blue}, std::nullopt};
        benchmark::DoNotOptimize(bt::tick(tree, bb));
        benchmark::DoNotOptimize(bb.intent);
    }
}
BENCHMARK(BM_Tick);

// Cost of 1000 steps of a scenario, starting from a fresh arena each batch.
void BM_ArenaSteps(benchmark::State& state, const char* name) {
    const auto config = *find_scenario(name);
    for (auto _ : state) {
        state.PauseTiming();
        Arena arena(config, trial_seed(config.base_seed, 0));
        state.ResumeTiming();
        for (int i = 0; i < 1000 && arena.running(); ++i) arena.step();
        benchmark::DoNotOptimize(arena.captured_total());
    }
}
BENCHMARK_CAPTURE(BM_ArenaSteps, baseline, "BL")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ArenaSteps, ephemeral_5k, "T5K")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ArenaSteps, capacity_1, "M1")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
