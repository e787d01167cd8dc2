#include <benchmark/benchmark.h>

#include "sensel/experiment.hpp"
#include "sensel/mcda.hpp"
#include "sensel/pareto.hpp"
#include "sensel/sensor_catalog.hpp"

namespace {

sensel::DecisionMatrix catalog_matrix(std::size_t count, std::size_t n_criteria) {
    sensel::CatalogSpec spec;
    spec.count = count;
    spec.seed = 2016;
    const auto sensors = sensel::generate_catalog(spec);
    const auto& all = sensel::criterion_names();
    const std::vector<std::string> names(all.begin(), all.begin() + static_cast<long>(n_criteria));
    return sensel::catalog_to_matrix(sensors, names);
}

void BM_ParetoFronts(benchmark::State& state) {
    const auto m = catalog_matrix(static_cast<std::size_t>(state.range(0)),
                                  static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sensel::pareto_fronts(m));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ParetoFronts)
    ->ArgsProduct({{1000, 4000, 10000}, {2, 6}})
    ->Unit(benchmark::kMillisecond);

void BM_BruteForceFronts(benchmark::State& state) {
    const auto m = catalog_matrix(static_cast<std::size_t>(state.range(0)), 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sensel::brute_force_fronts(m));
    }
}
BENCHMARK(BM_BruteForceFronts)->Arg(200)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Rank(benchmark::State& state) {
    const auto algo = static_cast<sensel::Algorithm>(state.range(0));
    const auto n = static_cast<std::size_t>(state.range(2));
    const auto m = catalog_matrix(static_cast<std::size_t>(state.range(1)), n);
    const auto w = sensel::WeightVector::uniform(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sensel::rank(algo, m, w));
    }
    state.SetLabel(std::string(sensel::to_string(algo)));
}
BENCHMARK(BM_Rank)
    ->ArgsProduct({{static_cast<long>(sensel::Algorithm::Saw),
                    static_cast<long>(sensel::Algorithm::Topsis),
                    static_cast<long>(sensel::Algorithm::Vikor)},
                   {10000},
                   {2, 6}})
    ->Unit(benchmark::kMicrosecond);

void BM_DefaultPlanReplication(benchmark::State& state) {
    auto plan = sensel::default_plan();
    plan.replications = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sensel::run_experiment(plan, {.threads = 1}));
    }
}
BENCHMARK(BM_DefaultPlanReplication)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
