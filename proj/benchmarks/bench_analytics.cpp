#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mkt/cluster.hpp"
#include "mkt/correlation.hpp"
#include "mkt/markov.hpp"
#include "mkt/panel.hpp"
#include "mkt/sde.hpp"
#include "mkt/trend.hpp"

namespace {

mkt::RevenuePanel random_panel(std::size_t n, std::size_t t, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> value(10.0, 1000.0);
    mkt::RevenuePanel panel;
    for (std::size_t i = 0; i < n; ++i) panel.companies.push_back("C" + std::to_string(i));
    for (std::size_t j = 0; j < t; ++j) panel.periods.push_back(2000 + static_cast<int>(j));
    panel.values.assign(n, std::vector<double>(t, 0.0));
    for (auto& row : panel.values)
        for (auto& v : row) v = value(gen);
    return panel;
}

mkt::TransitionMatrix random_chain(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> entry(0.05, 1.0);
    mkt::TransitionMatrix p;
    p.p.assign(3, std::vector<double>(3, 0.0));
    for (auto& row : p.p) {
        double sum = 0;
        for (auto& v : row) {
            v = entry(gen);
            sum += v;
        }
        for (auto& v : row) v /= sum;
    }
    return p;
}

void BM_PearsonMatrix(benchmark::State& state) {
    const auto panel = random_panel(static_cast<std::size_t>(state.range(0)), 24, 7);
    for (auto _ : state) {
        auto corr = mkt::pearson_matrix(panel);
        benchmark::DoNotOptimize(corr);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PearsonMatrix)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_ClusterExhaustive(benchmark::State& state) {
    const auto panel = random_panel(static_cast<std::size_t>(state.range(0)), 12, 11);
    const auto dist = mkt::correlation_distance(mkt::pearson_matrix(panel));
    for (auto _ : state) {
        auto result = mkt::cluster(dist, 3);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_ClusterExhaustive)->DenseRange(6, 10, 2);

void BM_ClusterHeuristic(benchmark::State& state) {
    const auto panel = random_panel(static_cast<std::size_t>(state.range(0)), 12, 13);
    const auto dist = mkt::correlation_distance(mkt::pearson_matrix(panel));
    for (auto _ : state) {
        auto result = mkt::cluster(dist, 4);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_ClusterHeuristic)->Arg(16)->Arg(32)->Arg(64);

void BM_StationaryPower(benchmark::State& state) {
    const auto p = random_chain(17);
    for (auto _ : state) {
        auto d = mkt::stationary(p, mkt::StationaryMethod::power_iteration);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_StationaryPower);

void BM_StationaryEigen(benchmark::State& state) {
    const auto p = random_chain(17);
    for (auto _ : state) {
        auto d = mkt::stationary(p, mkt::StationaryMethod::eigen_solve);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_StationaryEigen);

void BM_RidgeFit(benchmark::State& state) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> t(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = static_cast<double>(i);
        y[i] = 2.0 * t[i] + noise(gen);
    }
    for (auto _ : state) {
        auto line = mkt::ridge_fit(t, y, {1.0, false});
        benchmark::DoNotOptimize(line);
    }
}
BENCHMARK(BM_RidgeFit)->Range(8, 4096);

void BM_EulerMaruyama(benchmark::State& state) {
    mkt::SdeSystem system;
    system.factor_names = {"a", "b", "c"};
    system.alpha = {0.04, 0.01, 0.05};
    system.beta = {{0.0, 0.02, 0.03}, {0.01, 0.0, -0.02}, {0.0, 0.01, 0.0}};
    system.sigma = {0.08, 0.05, 0.1};
    system.corr = {{1.0, 0.3, 0.2}, {0.3, 1.0, 0.25}, {0.2, 0.25, 1.0}};
    system.x0 = {1.0, 1.0, 1.0};
    const mkt::SimulationSpec spec{1.0, 100, static_cast<int>(state.range(0)), 42};
    for (auto _ : state) {
        auto report = mkt::euler_maruyama(system, spec);
        benchmark::DoNotOptimize(report);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * spec.steps);
}
BENCHMARK(BM_EulerMaruyama)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Augment(benchmark::State& state) {
    const auto norm = mkt::normalize(random_panel(8, 16, 23));
    const mkt::NoiseSpec spec{0.05, 42, static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) {
        auto aug = mkt::augment(norm, spec);
        benchmark::DoNotOptimize(aug);
    }
}
BENCHMARK(BM_Augment)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
