#include <benchmark/benchmark.h>

#include "foodsim/scenario.hpp"

// Serial reference vs OpenMP Monte Carlo on the desk dataset.
// Run: ./bench/foodsim_bench [--benchmark_filter=...]

namespace {

using namespace foodsim;

const ScenarioConfig &desk_config() {
    static const ScenarioConfig config = ScenarioConfig::from_json_file(
        std::string(FOODSIM_SOURCE_DIR) + "/data/scenarios/fv_subsidy.json");
    return config;
}

const ScenarioData &desk_data() {
    static const ScenarioData data = load_scenario_data(desk_config());
    return data;
}

void bm_scenario_once(benchmark::State &state) {
    const auto &config = desk_config();
    const auto &data = desk_data();
    const ParameterDraw draw = central_draw(config, data);
    for (auto _ : state) {
        auto result = simulate_scenario(config, data, draw);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(bm_scenario_once);

void bm_monte_carlo(benchmark::State &state, ExecutionPolicy policy) {
    const auto &config = desk_config();
    const auto &data = desk_data();
    const std::size_t iterations = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto summary = run_monte_carlo(config, data, iterations, 42, policy);
        benchmark::DoNotOptimize(summary);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(iterations));
}

void bm_mc_serial(benchmark::State &state) { bm_monte_carlo(state, ExecutionPolicy::serial); }
void bm_mc_parallel(benchmark::State &state) { bm_monte_carlo(state, ExecutionPolicy::parallel); }

BENCHMARK(bm_mc_serial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_mc_parallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
