#include <benchmark/benchmark.h>

#include "cellplan/clustering.hpp"
#include "cellplan/planner.hpp"
#include "cellplan/synthetic.hpp"

namespace {

cellplan::PlanningMap make_instance(std::size_t n) {
    cellplan::SyntheticSpec spec;
    spec.node_count = n;
    spec.target_total_subscribers = static_cast<std::int64_t>(20 * n);
    spec.target_area_m2 = 1e7;
    spec.seed = 7;
    return cellplan::generate_map(spec);
}

// One full candidate-evaluation pass over all (medoid, non-medoid) pairs.
void BM_BestSwapPass(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::size_t k = 8;
    const auto map = make_instance(n);
    cellplan::SwapSearch search(map, cellplan::CostModel::LoadWeighted);
    const auto medoids = cellplan::select_initial_medoids(map, k, 42);
    const auto clustering = search.assign(medoids);
    for (auto _ : state) {
        benchmark::DoNotOptimize(search.best_swap(clustering));
    }
    state.SetComplexityN(state.range(0));
}

void BM_FullSwapSearch(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto map = make_instance(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cellplan::run_swap_search(map, 8, 42, cellplan::CostModel::LoadWeighted));
    }
}

void BM_PlanCwnPamMethodII(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto map = make_instance(n);
    const cellplan::CellParams params{1500.0, 600};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cellplan::plan(
            map, params, cellplan::AlgorithmChoice::cwnpam(cellplan::AdjustMethod::MethodII),
            42));
    }
}

}  // namespace

BENCHMARK(BM_BestSwapPass)->RangeMultiplier(2)->Range(128, 2048)->Complexity();
BENCHMARK(BM_FullSwapSearch)->RangeMultiplier(2)->Range(128, 512);
BENCHMARK(BM_PlanCwnPamMethodII)->RangeMultiplier(2)->Range(128, 512);

BENCHMARK_MAIN();
