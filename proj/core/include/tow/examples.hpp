#pragma once

#include <string>
#include <vector>

#include "tow/continuum.hpp"
#include "tow/function.hpp"
#include "tow/graph.hpp"

namespace tow {

// Small graphs and payoffs used across reports and tests.
namespace fixtures {

Graph path_with_loops(int n);
Graph complete_graph(int n, bool loops);
Graph single_edge();      // two vertices, one edge, no loops
Graph cycle(int n, bool loops);

// Two triangles sharing a gray hub, loops everywhere. Payoff is -1 on black
// vertices {0, 2}, +1 on white vertices {1, 3}, 0 on the gray hub 4. The
// equation u - (min+max)/2 = f has several solutions differing by
// non-constant functions; three exact ones are provided.
Graph bowties_graph();
VertexFunction bowties_payoff();
std::vector<VertexFunction> bowties_solutions();

// Piecewise-linear payoff on [0,1] with f(0) = f(1/2) = 1 and f(1) = -1,
// constant on the left half and linear on the right.
ScalarField interval_kink_payoff();

DomainSpec unit_interval_grid(int points);

}  // namespace fixtures

// One machine-checked row of the worked-examples report.
struct ExampleRow {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

// Runs the named example (or all of them) and returns the verdict table.
std::vector<ExampleRow> run_examples_suite(const std::string& name = "all");

std::vector<std::string> example_names();

}  // namespace tow
