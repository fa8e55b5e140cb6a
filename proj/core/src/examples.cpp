#include "tow/examples.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "tow/game.hpp"
#include "tow/solver.hpp"
#include "tow/value.hpp"

namespace tow {

namespace fixtures {

Graph path_with_loops(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::finite(n, edges, true);
}

Graph complete_graph(int n, bool loops) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::finite(n, edges, loops);
}

Graph single_edge() { return Graph::finite(2, {{0, 1}}, false); }

Graph cycle(int n, bool loops) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::finite(n, edges, loops);
}

Graph bowties_graph() {
  return Graph::finite(5,
                       {{0, 1}, {0, 4}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
                       true);
}

VertexFunction bowties_payoff() {
  return VertexFunction({-1.0, 1.0, -1.0, 1.0, 0.0});
}

std::vector<VertexFunction> bowties_solutions() {
  return {
      VertexFunction({0.0, 2.0, -1.0, 1.0, 0.5}),  // play locked in the left pair
      VertexFunction({0.0, 2.0, 0.0, 2.0, 1.0}),   // symmetric, ties at the hub
      VertexFunction({-1.0, 1.0, 0.0, 2.0, 0.5}),  // play locked in the right pair
  };
}

ScalarField interval_kink_payoff() {
  return [](std::span<const double> p) {
    const double x = p[0];
    return x <= 0.5 ? 1.0 : 1.0 - 4.0 * (x - 0.5);
  };
}

DomainSpec unit_interval_grid(int points) {
  DomainSpec spec;
  spec.shape = Interval{0.0, 1.0};
  spec.mesh = 1.0 / static_cast<double>(points - 1);
  spec.sampler = UniformGridSampler{};
  return spec;
}

}  // namespace fixtures

namespace {

using Runner = std::function<ExampleRow()>;

ExampleRow bracket_row(std::string name, const Graph& g, const VertexFunction& f,
                       long n, double expected, double tol, std::string note) {
  const AdvantageBracket b = advantage_bracket(g, f, n, 0.5 * tol);
  ExampleRow row{std::move(name), expected, b.midpoint(), tol, false, std::move(note)};
  row.pass = b.contains(expected) && std::abs(row.computed - expected) <= tol;
  return row;
}

std::vector<std::pair<std::string, Runner>> make_runners() {
  using fixtures::bowties_graph;
  using fixtures::bowties_payoff;
  using fixtures::bowties_solutions;

  std::vector<std::pair<std::string, Runner>> runners;

  runners.emplace_back("recursion-one-step", [] {
    const Graph g = fixtures::path_with_loops(3);
    const VertexFunction f({-1.0, 2.0, -1.0});
    const double dev = sup_distance(value_step(g, f, VertexFunction::zeros(3)), f);
    return ExampleRow{"recursion-one-step", 0.0, dev, 1e-15, dev <= 1e-15,
                      "one sweep from zero returns the running payoff"};
  });

  runners.emplace_back("recursion-two-step", [] {
    const Graph g = fixtures::path_with_loops(3);
    const VertexFunction f({-1.0, 2.0, -1.0});
    const double dev = sup_distance(value_step(g, f, f), f + 0.5);
    return ExampleRow{"recursion-two-step", 0.0, dev, 1e-15, dev <= 1e-15,
                      "second sweep adds the constant drift 1/2"};
  });

  runners.emplace_back("complete-with-loops-mean", [] {
    return bracket_row("complete-with-loops-mean", fixtures::complete_graph(3, true),
                       VertexFunction({0.0, 1.0, 2.0}), 10'000, 1.0, 1e-2,
                       "advantage of a complete graph with loops is (max+min)/2");
  });

  runners.emplace_back("complete-no-loops-unique-extremes", [] {
    return bracket_row("complete-no-loops-unique-extremes",
                       fixtures::complete_graph(3, false),
                       VertexFunction({0.0, 1.0, 4.0}), 10'000, 5.0 / 3.0, 1e-2,
                       "(max+min)/3 + (max2+min2)/6 with unique extremes");
  });

  runners.emplace_back("linear-graph-mean", [] {
    return bracket_row("linear-graph-mean", fixtures::path_with_loops(5),
                       VertexFunction({0.0, 1.0, 2.0, 3.0, 4.0}), 100'000, 2.0, 1e-2,
                       "monotone payoff on a looped path averages out");
  });

  runners.emplace_back("linear-graph-nonmonotone-half", [] {
    return bracket_row("linear-graph-nonmonotone-half", fixtures::path_with_loops(3),
                       VertexFunction({-1.0, 2.0, -1.0}), 1000, 0.5, 1e-6,
                       "non-monotone counterexample locks into drift 1/2");
  });

  runners.emplace_back("bipartite-period-two", [] {
    const Graph g = fixtures::single_edge();
    const VertexFunction f({1.0, -1.0});
    const auto trace =
        iterate(g, f, VertexFunction::zeros(2), 9, {.keep_iterates = true});
    double dev = 0.0;
    for (size_t k = 1; k + 2 < trace.iterates.size(); ++k) {
      dev = std::max(dev, sup_distance(trace.iterates[k], trace.iterates[k + 2]));
    }
    return ExampleRow{"bipartite-period-two", 0.0, dev, 1e-15, dev <= 1e-15,
                      "values alternate with period 2, no convergence"};
  });

  runners.emplace_back("bipartite-half-payoff", [] {
    const Graph g = fixtures::single_edge();
    const VertexFunction f({1.0, -1.0});
    const double r = equation_residual(g, f, 0.5 * f, 0.0);
    return ExampleRow{"bipartite-half-payoff", 0.0, r, 1e-15, r <= 1e-15,
                      "f/2 still solves the equation exactly"};
  });

  runners.emplace_back("bowties-residuals", [] {
    const Graph g = bowties_graph();
    const VertexFunction f = bowties_payoff();
    double worst = 0.0;
    for (const auto& u : bowties_solutions())
      worst = std::max(worst, equation_residual(g, f, u, 0.0));
    return ExampleRow{"bowties-residuals", 0.0, worst, 1e-12, worst <= 1e-12,
                      "all three displayed functions solve the equation"};
  });

  runners.emplace_back("bowties-nonuniqueness", [] {
    const auto sols = bowties_solutions();
    const VertexFunction diff = sols[0] - sols[2];
    const double osc = diff.oscillation();
    return ExampleRow{"bowties-nonuniqueness", 2.0, osc, 1e-12,
                      std::abs(osc - 2.0) <= 1e-12 && osc >= 0.5,
                      "two solutions differ by a non-constant function"};
  });

  runners.emplace_back("fixed-point-linear-graph", [] {
    const auto res = solve_fixed_point(fixtures::path_with_loops(3),
                                       VertexFunction({-1.0, 2.0, -1.0}), 1e-9);
    return ExampleRow{"fixed-point-linear-graph", 0.5, res.c, 1e-9,
                      res.converged && std::abs(res.c - 0.5) <= 1e-9,
                      "drift-recentered iteration finds c = 1/2"};
  });

  runners.emplace_back("fixed-point-complete-zero-shift", [] {
    const auto res = solve_fixed_point(fixtures::complete_graph(3, true),
                                       VertexFunction({-1.0, 0.0, 1.0}), 1e-9);
    return ExampleRow{"fixed-point-complete-zero-shift", 0.0, res.c, 1e-9,
                      res.converged && std::abs(res.c) <= 1e-9,
                      "balanced payoff solves with zero shift and u = f"};
  });

  runners.emplace_back("interval-eps-one", [] {
    const auto b = eps_advantage(fixtures::unit_interval_grid(21),
                                 fixtures::interval_kink_payoff(), 1.0, 20'000, 5e-4);
    return ExampleRow{"interval-eps-one", 0.0, b.midpoint(), 1e-3,
                      b.contains(0.0) && std::abs(b.midpoint()) <= 1e-3,
                      "at step 1 the interval behaves like one ball"};
  });

  runners.emplace_back("interval-eps-half", [] {
    const auto b = eps_advantage(fixtures::unit_interval_grid(21),
                                 fixtures::interval_kink_payoff(), 0.5, 20'000, 5e-4);
    return ExampleRow{"interval-eps-half", 1.0 / 3.0, b.midpoint(), 1e-3,
                      b.contains(1.0 / 3.0) && std::abs(b.midpoint() - 1.0 / 3.0) <= 1e-3,
                      "at step 1/2 the advantage moves to 1/3"};
  });

  runners.emplace_back("integral-mean-ladder", [] {
    const auto ladder = advantage_ladder(
        fixtures::unit_interval_grid(401),
        [](std::span<const double> p) { return p[0]; }, 0.2, 3,
        LadderSchedule::halving, 200'000, 5e-3);
    const double est = ladder.estimate();
    const double unc = ladder.uncertainty();
    return ExampleRow{"integral-mean-ladder", 0.5, est, unc,
                      std::abs(est - 0.5) <= unc,
                      "continuation of the advantage recovers the 1-d mean of f"};
  });

  runners.emplace_back("game-playout-matches-value", [] {
    const Graph g = fixtures::path_with_loops(3);
    const VertexFunction f({-1.0, 2.0, -1.0});
    const auto trace = iterate(g, f, VertexFunction::zeros(3), 2, {.keep_iterates = true});
    const Strategy greedy = Strategy::greedy(
        {trace.iterates[0], trace.iterates[1]});
    const auto rep = play(g, f, VertexFunction::zeros(3), 2, 1, greedy, greedy,
                          10'000, 0);
    const double tol = 3.0 * rep.std_error + 1e-9;
    return ExampleRow{"game-playout-matches-value", 2.5, rep.mean_payoff, tol,
                      std::abs(rep.mean_payoff - 2.5) <= tol,
                      "greedy-vs-greedy playouts reproduce the horizon value"};
  });

  runners.emplace_back("hitting-time-bound", [] {
    const Graph g = fixtures::path_with_loops(3);
    const auto rep = hitting_time_experiment(g, 0, Strategy::pull_toward(2), 10'000, 0);
    const double bound = 4.0;  // squared hop diameter
    return ExampleRow{"hitting-time-bound", bound, rep.mean_time,
                      3.0 * rep.std_error,
                      rep.mean_time <= bound + 3.0 * rep.std_error && rep.cap_hits == 0,
                      "pull-toward strategy reaches the target fast"};
  });

  runners.emplace_back("disc-radial-reduction", [] {
    const auto rep = radial_reduction_check(
        1.0, [](double s) { return s; }, 0.1, 50, 64, 41);
    return ExampleRow{"disc-radial-reduction", 0.0, rep.max_abs_difference,
                      rep.tolerance, rep.max_abs_difference <= rep.tolerance,
                      "disc values of a radial payoff match the 1-d game"};
  });

  return runners;
}

}  // namespace

std::vector<std::string> example_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : make_runners()) names.push_back(name);
  return names;
}

std::vector<ExampleRow> run_examples_suite(const std::string& name) {
  std::vector<ExampleRow> rows;
  bool found = false;
  for (const auto& [row_name, runner] : make_runners()) {
    if (name != "all" && name != row_name) continue;
    found = true;
    rows.push_back(runner());
  }
  if (!found) throw std::invalid_argument("unknown example '" + name + "'");
  return rows;
}

}  // namespace tow
