#include <benchmark/benchmark.h>

#include <cmath>

#include "infeig/eigensolver.hpp"
#include "infeig/evolution.hpp"
#include "infeig/operators.hpp"
#include "infeig/steady_solver.hpp"

using namespace infeig;

namespace {

GridPtr disk(int n, int s) { return make_grid(Domain(Disk{}), 1.0 / n, s); }

ScalarField smooth(const Grid& g) {
    return ScalarField::sample(g, [](const Point& p) { return std::exp(-3.0 * (p[0] * p[0] + p[1] * p[1])) + 0.2 * p[0]; });
}

SteadyProblem problem(const GridPtr& g, double c0) {
    return SteadyProblem(g, VectorField::zero(*g), ScalarField::constant(*g, c0), ScalarField::constant(*g, -1.0), 0.0);
}

void BM_ApplyOperator(benchmark::State& state) {
    const GridPtr g = disk(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const SteadyProblem p = problem(g, -1.0);
    const ScalarField u = smooth(*g);
    ScalarField out(g->active_count());
    for (auto _ : state) {
        apply_operator(p, u.values(), out.raw());
        benchmark::DoNotOptimize(out.raw().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g->active_count()));
}
BENCHMARK(BM_ApplyOperator)->Args({32, 1})->Args({64, 1})->Args({64, 2})->Args({128, 4});

void BM_CoerciveSolve(benchmark::State& state) {
    const GridPtr g = disk(static_cast<int>(state.range(0)), 2);
    const SteadyProblem p(g, VectorField::zero(*g),
                          ScalarField::sample(*g, [](const Point& x) { return -1.0 + 0.5 * std::sin(3 * x[0]); }),
                          ScalarField::constant(*g, -1.0), 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_negative_c(p, SolverConfig{}).u.raw().data());
}
BENCHMARK(BM_CoerciveSolve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_EigenConstant(benchmark::State& state) {
    const GridPtr g = disk(static_cast<int>(state.range(0)), 1);
    const ScalarField c = ScalarField::constant(*g, -2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_lambda_bar(g, VectorField::zero(*g), c, SolverConfig{}, 1e-4).lambda_bar);
}
BENCHMARK(BM_EigenConstant)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_StepExplicit(benchmark::State& state) {
    const GridPtr g = disk(static_cast<int>(state.range(0)), 1);
    const SteadyProblem p = problem(g, -1.0);
    const double dt = 0.9 * cfl_limit(p);
    ScalarField u = smooth(*g);
    for (auto _ : state) {
        u = step_explicit(u, p, dt);
        benchmark::DoNotOptimize(u.raw().data());
    }
}
BENCHMARK(BM_StepExplicit)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
