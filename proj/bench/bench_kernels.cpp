// Serial reference vs OpenMP version of each parallel kernel. The second
// argument of every parallel benchmark is the worker count.

#include "search.hpp"

#include <cvxdiff/constructions.hpp>
#include <cvxdiff/solver.hpp>
#include <cvxdiff/verify.hpp>

#include <benchmark/benchmark.h>

using namespace cvxdiff;

namespace {

void run_search(benchmark::State& state, int workers)
{
    detail::Problem p(7, OffsetSet::upto(4), 1);
    auto root_witness = feasible(p.base).witness;
    for (auto _ : state) {
        detail::BudgetClock clock(Budget{});
        detail::Node root{{}, root_witness};
        auto r = workers == 0 ? detail::search_count_serial(p, 11, {root}, clock)
                              : detail::search_count_parallel(p, 11, {root}, clock, workers);
        benchmark::DoNotOptimize(r.closures.data());
        state.counters["nodes"] = static_cast<double>(r.nodes);
    }
}

void BM_SearchSerial(benchmark::State& state) { run_search(state, 0); }
void BM_SearchParallel(benchmark::State& state) { run_search(state, static_cast<int>(state.range(0))); }

void BM_BruteForceSerial(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_min_serial(6, OffsetSet::upto(3), 150).value);
}

void BM_BruteForceParallel(benchmark::State& state)
{
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_min(6, OffsetSet::upto(3), 150, workers).value);
}

void BM_IncidenceSerial(benchmark::State& state)
{
    auto s = d3_extremal_set(160);
    for (auto _ : state)
        benchmark::DoNotOptimize(incidence_check_serial(s, 20).incidences);
}

void BM_IncidenceParallel(benchmark::State& state)
{
    auto s = d3_extremal_set(160);
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(incidence_check(s, 20, workers).incidences);
}

nlohmann::json sweep_config()
{
    return nlohmann::json::parse(R"({"rows": [
        {"check": "claim", "claims": ["thm1", "thm2", "rem_124"], "family": "random", "n": [5, 30], "samples": 2000, "seed": 1},
        {"check": "sum_blocks", "family": "random", "n": [8, 30], "samples": 200, "seed": 3, "i": [2, 3, 4]}
    ]})");
}

void BM_PropertySweep(benchmark::State& state)
{
    auto cfg = sweep_config();
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_report(cfg, workers).passed);
}

} // namespace

BENCHMARK(BM_SearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IncidenceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IncidenceParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropertySweep)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
