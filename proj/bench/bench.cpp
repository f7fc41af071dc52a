// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <map>

#include "tcycle/decomposition.hpp"
#include "tcycle/generate.hpp"
#include "tcycle/kernel.hpp"

using namespace tcycle;

namespace {

const EmbeddedGraph& rings(int depth) {
    static std::map<int, EmbeddedGraph> cache;
    auto it = cache.find(depth);
    if (it == cache.end()) it = cache.emplace(depth, gen_nested_rings(depth, 24, 4, true, 5)).first;
    return it->second;
}

const EmbeddedGraph& grid(int cols) {
    static std::map<int, EmbeddedGraph> cache;
    auto it = cache.find(cols);
    if (it == cache.end()) it = cache.emplace(cols, gen_grid(3, cols, 5, 9)).first;
    return it->second;
}

void isolation(benchmark::State& st, bool par) {
    const auto& g = rings((int)st.range(0));
    auto vs = g.vertices();
    auto T = g.terminals();
    for (auto _ : st) {
        auto r = par ? isolation_batch_parallel(g, T, vs, 2) : isolation_batch_serial(g, T, vs, 2);
        benchmark::DoNotOptimize(r);
    }
    st.SetItemsProcessed(st.iterations() * (long)vs.size());
}

void reed(benchmark::State& st, bool par) {
    const auto& g = rings((int)st.range(0));
    for (auto _ : st) {
        auto r = reed_pipeline(g, g.terminals(), IsolationBudget{2}, par);
        benchmark::DoNotOptimize(r);
    }
}

void kernel(benchmark::State& st, bool par) {
    const auto& g = grid((int)st.range(0));
    KernelConfig cfg;
    cfg.parallel = par;
    for (auto _ : st) {
        auto r = kernelize(g, g.terminals(), cfg);
        benchmark::DoNotOptimize(r);
    }
}

}  // namespace

BENCHMARK_CAPTURE(isolation, serial, false)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(isolation, parallel, true)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(reed, serial, false)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(reed, parallel, true)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(kernel, serial, false)->Arg(34)->Arg(134)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(kernel, parallel, true)->Arg(34)->Arg(134)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
