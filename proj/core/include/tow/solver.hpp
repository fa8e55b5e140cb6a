#pragma once

#include <optional>
#include <string>

#include "tow/function.hpp"
#include "tow/graph.hpp"
#include "tow/value.hpp"

namespace tow {

enum class SolveMethod { fixed_point, averaged, direct_search };

const char* to_string(SolveMethod m);

// A pair (u, c) with T_{f-c} u ~= u. u is gauge-fixed so that u(0) = 0; the
// residual is recomputed from scratch on the final iterate.
struct SolveResult {
  VertexFunction u;
  double c = 0.0;
  double residual = 0.0;
  long iterations = 0;
  SolveMethod method = SolveMethod::fixed_point;
  std::optional<double> rate_alpha;  // fitted geometric decay, when observable
  bool converged = false;
  std::string diagnostic;  // empty when converged
};

// Drift-recentered value iteration. Intended for graphs with a loop at every
// vertex and for eps-adjacency graphs, where the recentered iteration
// converges; on other inputs it runs anyway and reports a diagnostic failure
// if it cannot reach tol.
SolveResult solve_fixed_point(const Graph& g, const VertexFunction& f,
                              double tol = 1e-9, long n_max = 1'000'000);

// Residual minimization for arbitrary finite graphs: plain iteration first,
// a two-step average seed when the increments lock into a period-2 cycle,
// then Gauss-Seidel sweeps with scalar updates of c, with deterministic
// perturbation restarts. Failure carries the best iterate and does not imply
// that no solution exists.
SolveResult solve_general(const Graph& g, const VertexFunction& f,
                          double tol = 1e-9, long n_max = 1'000'000,
                          int restarts = 8);

struct Verification {
  bool accepted = false;
  double residual = 0.0;
};

Verification verify_solution(const Graph& g, const VertexFunction& f,
                             const VertexFunction& u, double tol);

// Post-hoc analysis of a trace recorded with record_extremal_pairs:
// stabilized_at is the first sweep index from which every vertex keeps the
// same (argmin, argmax) neighbor pair through the end of the trace and the
// recentred increments decay; rate_alpha is the least-squares geometric rate
// fitted on the last half of the post-stabilization increments (needs >= 10
// usable points).
struct StabilizationReport {
  std::optional<int> stabilized_at;
  std::optional<double> rate_alpha;
  double r_squared = 0.0;  // of the log-linear fit, when rate_alpha is set
  double drift = 0.0;      // increment midpoint at the end of the trace
};

StabilizationReport analyze_stabilization(const Graph& g, const VertexFunction& f,
                                          const IterationTrace& trace);

namespace detail {
// Least-squares fit of log(values[i]) against i over [from, to); returns
// (rate, r_squared) or nullopt when fewer than min_points usable entries.
std::optional<std::pair<double, double>> fit_geometric_rate(
    const std::vector<double>& values, size_t from, size_t to,
    size_t min_points);
}  // namespace detail

}  // namespace tow
