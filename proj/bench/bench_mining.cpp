#include <benchmark/benchmark.h>

#include <filesystem>

#include "mrfsm/datagen.hpp"
#include "mrfsm/driver.hpp"
#include "mrfsm/oracle.hpp"
#include "mrfsm/partitioner.hpp"

namespace {

using namespace mrfsm;

const GraphDataset& workload() {
    static const GraphDataset d = [] {
        GeneratorParams p;
        p.graphs = 2000;
        p.avg_edges = 25;
        p.seed = 21;
        return generate(p);
    }();
    return d;
}

constexpr double kMinsup = 0.2;

void BM_Serial(benchmark::State& state) {
    const auto& d = workload();
    const auto tau = compute_threshold(kMinsup, d.size());
    for (auto _ : state) benchmark::DoNotOptimize(mine_sequential(d, tau));
}
BENCHMARK(BM_Serial)->Unit(benchmark::kMillisecond)->UseRealTime();

// args: workers, partitions
void BM_Drive(benchmark::State& state) {
    const auto& d = workload();
    JobConfig c;
    c.workers = static_cast<std::uint32_t>(state.range(0));
    c.partitions = static_cast<std::uint32_t>(state.range(1));
    c.reducers = 8;
    c.scheme = PartitionScheme::edge_balanced;
    c.minsup_fraction = kMinsup;
    c.staging_root = std::filesystem::temp_directory_path() / "mrfsm_bench";
    for (auto _ : state) benchmark::DoNotOptimize(drive(d, c));
    std::filesystem::remove_all(c.staging_root);
}
BENCHMARK(BM_Drive)
    ->ArgsProduct({{1, 2, 4, 8}, {1, 20}})
    ->ArgNames({"W", "k"})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_MinDfsCode(benchmark::State& state) {
    const auto& g = workload().graphs()[0];
    for (auto _ : state) benchmark::DoNotOptimize(min_dfs_code(g));
}
BENCHMARK(BM_MinDfsCode)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
