#include <benchmark/benchmark.h>

#include "ringage/exact_oracle.hpp"
#include "ringage/gossip_sim.hpp"
#include "ringage/minimal_animal.hpp"

using namespace ringage;

namespace {

void BM_ExactParallel(benchmark::State& state) {
    const auto n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(n, 2, Rates{}).v1());
}

void BM_ExactSerial(benchmark::State& state) {
    const auto n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(serial::solve_exact(n, 2, Rates{}).v1());
}

void BM_AnimalGrowParallel(benchmark::State& state) {
    const RingTopology topo(state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(min_incoming_by_size(topo).size());
}

void BM_AnimalFilterSerial(benchmark::State& state) {
    const RingTopology topo(state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(serial::min_incoming_by_size(topo).size());
}

SimConfig bench_config(std::int64_t n) {
    SimConfig c;
    c.n = n;
    c.neighbors = radius::Power{0.5};
    c.horizon = 200.0;
    c.replications = 4;
    return c;
}

void BM_SimulateParallel(benchmark::State& state) {
    const SimConfig c = bench_config(state.range(0));
    std::uint64_t events = 0;
    for (auto _ : state) {
        const AgeEstimate e = simulate(c);
        events += e.events_processed;
        benchmark::DoNotOptimize(e.mean);
    }
    state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}

void BM_SimulateSerial(benchmark::State& state) {
    const SimConfig c = bench_config(state.range(0));
    std::uint64_t events = 0;
    for (auto _ : state) {
        const AgeEstimate e = serial::simulate(c);
        events += e.events_processed;
        benchmark::DoNotOptimize(e.mean);
    }
    state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}

}  // namespace

BENCHMARK(BM_ExactParallel)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExactSerial)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AnimalGrowParallel)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AnimalFilterSerial)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
