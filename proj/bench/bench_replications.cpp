// Serial reference vs OpenMP replication runner on the bundled scenario.

#include "portsim/experiments.hpp"

#include <benchmark/benchmark.h>

using namespace portsim;

namespace {

const Scenario& desk()
{
    static const Scenario s = load_scenario_file(PORTSIM_DATA_DIR "/scenarios/desk35.json");
    return s;
}

std::vector<ReplicationJob> jobs(int per_setting)
{
    std::vector<ReplicationJob> out;
    for (const auto& s : canonical_settings()) {
        for (int i = 0; i < per_setting; ++i) {
            out.push_back({s, 0, static_cast<std::uint64_t>(1 + i)});
        }
    }
    return out;
}

void BM_Serial(benchmark::State& state)
{
    const auto js = jobs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_jobs_serial(desk(), js));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(js.size()));
}

void BM_Parallel(benchmark::State& state)
{
    const auto js = jobs(static_cast<int>(state.range(0)));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_jobs_parallel(desk(), js, threads));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(js.size()));
}

} // namespace

BENCHMARK(BM_Serial)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->Args({4, 2})->Args({4, 4})->Args({4, 0})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
