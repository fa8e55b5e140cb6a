#pragma once

#include <utility>
#include <vector>

#include "tow/function.hpp"
#include "tow/graph.hpp"

namespace tow {

// Statistics of a value-iteration run u_{k+1} = T u_k with
// T u(x) = (min_{y~x} u(y) + max_{y~x} u(y)) / 2 + f(x).
struct IterationTrace {
  VertexFunction u_current;  // u_n
  int n = 0;

  // per step k = 0..n
  std::vector<double> max_u_history;
  std::vector<double> min_u_history;

  // increment extremes, entry k-1 holds M_k = max(u_k - u_{k-1}) for k = 1..n;
  // M is non-increasing and m non-decreasing because one sweep is nonexpansive
  std::vector<double> max_increment_history;
  std::vector<double> min_increment_history;
  std::vector<double> increment_sup_norm;

  // per sweep k = 0..n-1, per vertex: (argmin, argmax) neighbor used when
  // computing u_{k+1} from u_k (lowest index wins ties); filled on request
  std::vector<std::vector<std::pair<int, int>>> extremal_pairs;
  // u_0..u_n, filled on request
  std::vector<VertexFunction> iterates;

  double last_max_increment() const { return max_increment_history.back(); }
  double last_min_increment() const { return min_increment_history.back(); }
};

struct IterateOptions {
  bool record_extremal_pairs = false;
  bool keep_iterates = false;
};

// One sweep of the value operator.
VertexFunction value_step(const Graph& g, const VertexFunction& f,
                          const VertexFunction& u);

IterationTrace iterate(const Graph& g, const VertexFunction& f,
                       const VertexFunction& u0, int n,
                       const IterateOptions& opts = {});

// Certified interval for the long-term advantage constant: lower = min(u_n)/n
// and upper = max(u_n)/n for the run started from the zero terminal payoff.
// min(u_n) is superadditive and max(u_n) subadditive in n, so every bracket
// contains the limit and the width shrinks like 1/n.
struct AdvantageBracket {
  double lower = 0.0;
  double upper = 0.0;
  long n = 0;
  bool tol_met = false;

  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
  bool contains(double c) const { return lower <= c && c <= upper; }
};

// Runs until upper - lower <= tol or n_max sweeps, whichever first.
AdvantageBracket advantage_bracket(const Graph& g, const VertexFunction& f,
                                   long n_max, double tol = 0.0);

// sup-norm residual of the shifted equation: || T_{f-c} u - u ||.
double equation_residual(const Graph& g, const VertexFunction& f,
                         const VertexFunction& u, double c);

// Pointwise extremes of u over closed metric balls of radius r intersected
// with the cloud of an eps-adjacency graph.
VertexFunction ball_max_filter(const Graph& g, const VertexFunction& u, double r);
VertexFunction ball_min_filter(const Graph& g, const VertexFunction& u, double r);

// sup |u(x) - u(y)| over cloud pairs with d(x, y) <= delta.
double metric_oscillation(const Graph& g, const VertexFunction& u, double delta);

// Graph form: (min_{y~x} u + max_{y~x} u) / 2 - u(x).
VertexFunction inf_laplacian(const Graph& g, const VertexFunction& u);

// Metric form over radius-r balls: (min_B u + max_B u - 2 u(x)) / r^2.
VertexFunction eps_inf_laplacian(const Graph& g, const VertexFunction& u, double r);

}  // namespace tow
