#include <benchmark/benchmark.h>

#include "walkdet/bounds.hpp"
#include "walkdet/detector.hpp"
#include "walkdet/graphs.hpp"
#include "walkdet/spectral.hpp"

using namespace walkdet;

namespace {

MarkovChain cycle_chain(int n) { return graphs::uniform_walk_chain(graphs::gen_cycle(n)); }

void BM_LikelihoodForward(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    auto chain = cycle_chain(m);
    auto obs = detector::simulate_h1(chain, 2.0, n, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(detector::log_likelihood_ratio(chain, 2.0, obs));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_LikelihoodForward)->Args({101, 2000})->Args({1001, 2000});

void BM_PerronSolve(benchmark::State& state) {
    auto chain = graphs::uniform_walk_chain(
        graphs::gen_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), true));
    for (auto _ : state) {
        spectral::PerronSolver solver(chain);
        benchmark::DoNotOptimize(solver.log_lambda(0.37));
    }
}
BENCHMARK(BM_PerronSolve)->Arg(16)->Arg(32);

void BM_PhysicsLowerSweep(benchmark::State& state) {
    auto chain = cycle_chain(101);
    for (auto _ : state) {
        bounds::PhysicsBound pb(chain, /*force_parametric=*/true);
        double acc = 0.0;
        for (double beta = 1.2; beta <= 4.0; beta += 0.2) acc += pb.lower(beta);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_PhysicsLowerSweep);

}  // namespace

BENCHMARK_MAIN();
