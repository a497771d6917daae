#include <benchmark/benchmark.h>

#include <map>

#include "tps/tps.hpp"

namespace {

using namespace tps;

// One generated graph per (n, exponent), kept for the whole run.
const std::vector<Edge>& graph(std::uint64_t n, double exponent)
{
    static std::map<std::pair<std::uint64_t, double>, std::vector<Edge>> cache;
    auto [it, fresh] = cache.try_emplace({n, exponent});
    if (fresh) {
        it->second = generate_power_law_edges({n, exponent, 1});
    }
    return it->second;
}

double exponent_of(const benchmark::State& state)
{
    return static_cast<double>(state.range(1)) / 10.0;
}

void BM_Degrees(benchmark::State& state)
{
    const auto& edges = graph(static_cast<std::uint64_t>(state.range(0)), exponent_of(state));
    const EdgeStream s = EdgeStream::from_edges(edges);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_degrees(s));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}

void BM_Clustering(benchmark::State& state)
{
    const auto& edges = graph(static_cast<std::uint64_t>(state.range(0)), exponent_of(state));
    const EdgeStream s = EdgeStream::from_edges(edges);
    const DegreeTable d = compute_degrees(s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(streaming_clustering(s, d, 32));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * edges.size()));
}

void BM_TwoPhase(benchmark::State& state)
{
    const auto& edges = graph(static_cast<std::uint64_t>(state.range(0)), exponent_of(state));
    const EdgeStream s = EdgeStream::from_edges(edges);
    const auto k = static_cast<std::uint32_t>(state.range(2));
    NullSink sink;
    double rf = 0;
    for (auto _ : state) {
        rf = run_2ps(s, {k, 1.05, {}}, sink).report.rf;
    }
    state.counters["rf"] = rf;
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}

void BM_Hdrf(benchmark::State& state)
{
    const auto& edges = graph(static_cast<std::uint64_t>(state.range(0)), exponent_of(state));
    const EdgeStream s = EdgeStream::from_edges(edges);
    const auto k = static_cast<std::uint32_t>(state.range(2));
    NullSink sink;
    double rf = 0;
    for (auto _ : state) {
        rf = run_hdrf(s, k, 1.05, {}, sink).rf;
    }
    state.counters["rf"] = rf;
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}

void BM_Dbh(benchmark::State& state)
{
    const auto& edges = graph(static_cast<std::uint64_t>(state.range(0)), exponent_of(state));
    const EdgeStream s = EdgeStream::from_edges(edges);
    const auto k = static_cast<std::uint32_t>(state.range(2));
    NullSink sink;
    double rf = 0;
    for (auto _ : state) {
        rf = run_dbh(s, k, 1.05, sink).rf;
    }
    state.counters["rf"] = rf;
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}

// args: vertices, exponent * 10, k
BENCHMARK(BM_Degrees)->Args({100000, 22, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Clustering)->Args({100000, 22, 0})->Args({100000, 30, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoPhase)->ArgsProduct({{100000}, {22, 30}, {8, 32, 128}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hdrf)->ArgsProduct({{100000}, {22, 30}, {8, 32, 128}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dbh)->ArgsProduct({{100000}, {22, 30}, {32}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
