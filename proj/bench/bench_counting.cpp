// Parallel enumeration kernels against their serial references.

#include "boolcsp/counting.hpp"
#include "boolcsp/gadgets.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace boolcsp;

namespace {

CspInstance random_instance(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CspInstance inst;
    for (std::size_t v = 0; v < n; ++v) inst.add_variable("x" + std::to_string(v));
    inst.add_relation("or", rel::or_(2));
    inst.add_relation("nand3", rel::nand(3));
    inst.add_relation("imp", rel::implies());
    const char* names[] = {"or", "nand3", "imp"};
    for (std::size_t c = 0; c < m; ++c) {
        const std::string name = names[rng() % 3];
        const int arity = name == "nand3" ? 3 : 2;
        std::vector<Term> scope;
        for (int j = 0; j < arity; ++j) scope.push_back(Term::variable(rng() % n));
        inst.add_constraint(name, scope);
    }
    return inst;
}

Hypergraph random_graph(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Hypergraph h(n);
    for (std::size_t e = 0; e < n; ++e) {
        std::vector<std::size_t> edge{rng() % n, rng() % n, rng() % n};
        std::sort(edge.begin(), edge.end());
        edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
        h.add_edge(edge);
    }
    return h;
}

void BM_BruteForceSerial(benchmark::State& state) {
    const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_count_serial(inst));
}

void BM_BruteForceParallel(benchmark::State& state) {
    const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_count(inst));
}

void BM_TallySerial(benchmark::State& state) {
    const auto w = simulate_eq_or_nand(rel::or_(2), rel::nand(2), static_cast<int>(state.range(0)));
    const auto dist = w.distinguished();
    for (auto _ : state) benchmark::DoNotOptimize(tally_solutions_serial(w.instance, dist));
}

void BM_TallyParallel(benchmark::State& state) {
    const auto w = simulate_eq_or_nand(rel::or_(2), rel::nand(2), static_cast<int>(state.range(0)));
    const auto dist = w.distinguished();
    for (auto _ : state) benchmark::DoNotOptimize(tally_solutions(w.instance, dist));
}

void BM_IndependentSetsSerial(benchmark::State& state) {
    const auto h = random_graph(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(hypergraph_is_count_serial(h));
}

void BM_IndependentSetsParallel(benchmark::State& state) {
    const auto h = random_graph(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(hypergraph_is_count(h));
}

void BM_AffineCount(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    CspInstance inst;
    for (std::size_t v = 0; v < n; ++v) inst.add_variable("x" + std::to_string(v));
    inst.add_relation("eq", rel::eq(2));
    inst.add_relation("neq", rel::neq());
    for (std::size_t c = 0; c < n; ++c)
        inst.add_constraint(rng() % 2 ? "eq" : "neq", {Term::variable(rng() % n), Term::variable(rng() % n)});
    for (auto _ : state) benchmark::DoNotOptimize(affine_count(inst));
}

} // namespace

BENCHMARK(BM_BruteForceSerial)->Arg(16)->Arg(20)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(16)->Arg(20)->Arg(22)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TallySerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TallyParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IndependentSetsSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndependentSetsParallel)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AffineCount)->Arg(200)->Arg(2000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
