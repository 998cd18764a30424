// Microbenchmarks for the hot paths: superlevel enumeration, union-find root
// construction, the chain-complex oracle, ideal computation, and the full
// analysis pipeline.
#include "pswf/invariants.hpp"
#include "pswf/ktheory.hpp"
#include "pswf/lattice.hpp"
#include "pswf/plumbing.hpp"

#include <benchmark/benchmark.h>

using namespace pswf;

namespace {

PlumbingGraph e8() {
    std::vector<std::pair<int, long long>> vs;
    for (int i = 0; i < 8; ++i) vs.push_back({i, -2});
    return make_plumbing(vs, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}});
}

void BM_EnumerateRegion(benchmark::State& state) {
    auto g = e8();
    auto cls = enumerate_spinc_classes(g);
    Rat h = Rat(2) - 2 * state.range(0);
    for (auto _ : state) {
        auto pts = enumerate_superlevel_points(g, cls[0], h, 8'000'000);
        benchmark::DoNotOptimize(pts);
    }
}
BENCHMARK(BM_EnumerateRegion)->Arg(2)->Arg(4)->Arg(6);

void BM_GradedRoot(benchmark::State& state) {
    auto g = from_brieskorn({2, 3, 6 * state.range(0) + 1});
    auto cls = enumerate_spinc_classes(g);
    Rat h = max_class_weight(g, cls[0]) - 12;
    for (auto _ : state) {
        auto r = h0_graded_root(g, cls[0], h, 8'000'000);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_GradedRoot)->Arg(1)->Arg(3)->Arg(5);

void BM_Oracle(benchmark::State& state) {
    auto g = e8();
    auto cls = enumerate_spinc_classes(g);
    Rat h = Rat(2) - 2 * state.range(0);
    for (auto _ : state) {
        auto mods = full_homology_oracle(g, cls[0], h, 2);
        benchmark::DoNotOptimize(mods);
    }
}
BENCHMARK(BM_Oracle)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_IdealOfAn(benchmark::State& state) {
    for (auto _ : state) {
        auto I = ideal_of_An(state.range(0));
        benchmark::DoNotOptimize(I);
    }
}
BENCHMARK(BM_IdealOfAn)->Arg(4)->Arg(8);

void BM_Analyze(benchmark::State& state) {
    auto g = from_brieskorn({2, 3, 7});
    auto cls = enumerate_spinc_classes(g);
    for (auto _ : state) {
        auto r = analyze(g, cls[0]);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);

void BM_MaxClassWeight(benchmark::State& state) {
    auto g = from_brieskorn({2, 3, 31});
    auto cls = enumerate_spinc_classes(g);
    for (auto _ : state) {
        Rat w = max_class_weight(g, cls[0]);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_MaxClassWeight);

}  // namespace

BENCHMARK_MAIN();
