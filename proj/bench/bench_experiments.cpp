#include <benchmark/benchmark.h>

#include "oambandit/experiments.hpp"

namespace {

using namespace oambandit;

ExperimentConfig bench_config(PolicyKind policy, int players) {
    ExperimentConfig cfg;
    cfg.players = players;
    cfg.policy = policy;
    cfg.horizon = 1000;
    cfg.reps = 200;
    cfg.seed = 1;
    return cfg;
}

template <Execution Mode>
void BM_Experiment(benchmark::State& state) {
    const auto policy = static_cast<PolicyKind>(state.range(0));
    const auto cfg = bench_config(policy, policy == PolicyKind::Greedy && state.range(1) == 1 ? 1 : 2);
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, Mode));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.reps * cfg.horizon));
    state.SetLabel(std::string(to_string(policy)) + (cfg.players == 1 ? "/1p" : "/2p"));
}

void policy_args(benchmark::internal::Benchmark* b) {
    b->Args({static_cast<int>(PolicyKind::Greedy), 1});
    b->Args({static_cast<int>(PolicyKind::Greedy), 2});
    b->Args({static_cast<int>(PolicyKind::Equilibrium), 2});
    b->Args({static_cast<int>(PolicyKind::Quantum), 2});
    b->Unit(benchmark::kMillisecond)->UseRealTime();
}

BENCHMARK_TEMPLATE(BM_Experiment, Execution::Serial)->Apply(policy_args);
BENCHMARK_TEMPLATE(BM_Experiment, Execution::Parallel)->Apply(policy_args);

}  // namespace

BENCHMARK_MAIN();
