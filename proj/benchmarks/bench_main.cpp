#include <benchmark/benchmark.h>

#include "aoi_lab/environment.hpp"
#include "aoi_lab/exact_aoi.hpp"
#include "aoi_lab/experiment.hpp"
#include "aoi_lab/policies.hpp"

namespace {

using namespace aoi_lab;

// One full decide/observe slot per iteration, against coupled service.
void BM_PolicySlot(benchmark::State& state, const char* name) {
  Instance instance(builtin_setting("1.c").mu);
  auto policy = make_policy(name, instance);
  RngStream env(1), rng(2);
  std::int64_t age = 1, t = 1;
  ChannelDraw draw;
  for (auto _ : state) {
    Decision d = policy->decide(age, rng);
    sample_draw(draw, instance, t++, env, CouplingMode::kCoupled);
    bool success = draw.success(instance, d.channel);
    policy->observe(d.channel, success ? 1 : 0);
    age = step(age, success);
    benchmark::DoNotOptimize(age);
  }
}

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig config = builtin_setting("1.c");
  config.horizon = 2000;
  config.replications = static_cast<int>(state.range(0));
  config.policies = {"ucb", "ts"};
  config.seed = 9;
  for (auto _ : state) {
    auto curves = run_experiment(config);
    benchmark::DoNotOptimize(curves);
  }
  state.SetItemsProcessed(state.iterations() * config.horizon * config.replications * 2);
}

void BM_ExactCumulativeAoi(benchmark::State& state) {
  Instance instance(builtin_setting("1.e").mu);
  FixedSchedule schedule;
  schedule.channels.resize(state.range(0));
  for (std::size_t i = 0; i < schedule.channels.size(); ++i) {
    schedule.channels[i] = static_cast<int>(i % 5);
  }
  schedule.pre_history = instance.k_star();
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_cumulative_aoi(instance, schedule));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_PolicySlot, ucb, "ucb");
BENCHMARK_CAPTURE(BM_PolicySlot, ts, "ts");
BENCHMARK_CAPTURE(BM_PolicySlot, q_ucb, "q-ucb");
BENCHMARK_CAPTURE(BM_PolicySlot, aa_ts, "aa-ts");
BENCHMARK_CAPTURE(BM_PolicySlot, aa_q_ts, "aa-q-ts");
BENCHMARK(BM_RunExperiment)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactCumulativeAoi)->Arg(128)->Arg(1024);

BENCHMARK_MAIN();
