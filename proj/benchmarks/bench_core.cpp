#include <benchmark/benchmark.h>

#include "tow/continuum.hpp"
#include "tow/examples.hpp"
#include "tow/game.hpp"
#include "tow/rng.hpp"
#include "tow/value.hpp"

using namespace tow;

namespace {

VertexFunction ramp(int n) {
  std::vector<double> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = static_cast<double>(i) / n;
  return VertexFunction(std::move(v));
}

void BM_value_step_grid(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const double spacing = 1.0 / (points - 1);
  const Graph g = Graph::eps_adjacency(PointCloud(1, ramp(points).values(), 10 * spacing));
  const VertexFunction f = ramp(points);
  VertexFunction u = VertexFunction::zeros(points);
  for (auto _ : state) {
    u = value_step(g, f, u);
    benchmark::DoNotOptimize(u.values().data());
  }
  state.SetItemsProcessed(state.iterations() * points);
}
BENCHMARK(BM_value_step_grid)->Arg(101)->Arg(401)->Arg(1601);

void BM_value_step_complete(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = fixtures::complete_graph(n, true);
  const VertexFunction f = ramp(n);
  VertexFunction u = VertexFunction::zeros(n);
  for (auto _ : state) {
    u = value_step(g, f, u);
    benchmark::DoNotOptimize(u.values().data());
  }
}
BENCHMARK(BM_value_step_complete)->Arg(16)->Arg(64)->Arg(256);

void BM_advantage_bracket(benchmark::State& state) {
  const Graph g = fixtures::path_with_loops(static_cast<int>(state.range(0)));
  const VertexFunction f = ramp(g.vertex_count());
  for (auto _ : state) {
    auto b = advantage_bracket(g, f, 2000);
    benchmark::DoNotOptimize(b.lower);
  }
}
BENCHMARK(BM_advantage_bracket)->Arg(5)->Arg(25)->Arg(100);

void BM_solve_fixed_point(benchmark::State& state) {
  const Graph g = fixtures::path_with_loops(static_cast<int>(state.range(0)));
  const VertexFunction f = ramp(g.vertex_count());
  for (auto _ : state) {
    auto res = solve_fixed_point(g, f, 1e-9, 50'000);
    benchmark::DoNotOptimize(res.residual);
  }
}
BENCHMARK(BM_solve_fixed_point)->Arg(5)->Arg(25)->Arg(100);

void BM_playouts(benchmark::State& state) {
  const Graph g = fixtures::path_with_loops(9);
  const VertexFunction f = ramp(9);
  const VertexFunction u0 = VertexFunction::zeros(9);
  const int horizon = 16;
  const auto trace = iterate(g, f, u0, horizon, {.keep_iterates = true});
  const Strategy greedy = Strategy::greedy(std::vector<VertexFunction>(
      trace.iterates.begin(), trace.iterates.begin() + horizon));
  uint64_t seed = 0;
  for (auto _ : state) {
    auto rep = play(g, f, u0, horizon, 4, greedy, greedy, 1000, seed++);
    benchmark::DoNotOptimize(rep.mean_payoff);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_playouts);

void BM_ball_filter(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const double spacing = 1.0 / (points - 1);
  const Graph g = Graph::eps_adjacency(PointCloud(1, ramp(points).values(), 4 * spacing));
  SplitMix64 rng(5);
  std::vector<double> vals(static_cast<size_t>(points));
  for (auto& v : vals) v = rng.uniform01();
  const VertexFunction u(std::move(vals));
  for (auto _ : state) {
    auto hi = ball_max_filter(g, u, 8 * spacing);
    benchmark::DoNotOptimize(hi.values().data());
  }
}
BENCHMARK(BM_ball_filter)->Arg(101)->Arg(401);

}  // namespace

BENCHMARK_MAIN();
