#pragma once

// Randomized invariant suites shared by the unit tests (small counts) and the
// acceptance gate (10^3 instances each). Every suite returns the number of
// violations found; the expected count is always zero.

#include <cmath>
#include <string>
#include <vector>

#include "tow/solver.hpp"
#include "tow/value.hpp"

#include "helpers.hpp"

namespace tow::testsupport {

// u0 <= v0 propagates pointwise through sweeps; adding a constant to u adds
// exactly that constant.
inline int suite_monotonicity(int count, uint64_t seed = 101) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const Graph g = random_graph(rng, 10, rng.coin());
    const int n = g.vertex_count();
    const VertexFunction f = random_function(rng, n, 3.0);
    const VertexFunction u = random_function(rng, n, 2.0);
    VertexFunction v = u;
    for (int x = 0; x < n; ++x) v[x] += 2.0 * rng.uniform01();
    const VertexFunction au = value_step(g, f, u);
    const VertexFunction av = value_step(g, f, v);
    for (int x = 0; x < n; ++x) {
      if (au[x] > av[x]) ++violations;
    }
    const double c = 4.0 * rng.uniform01() - 2.0;
    const VertexFunction shifted = value_step(g, f, u + c);
    if (sup_distance(shifted, au + c) > 1e-12 * (1.0 + au.sup_norm() + std::abs(c)))
      ++violations;
  }
  return violations;
}

// Running payoff f + c yields u_n + n c.
inline int suite_payoff_shift(int count, uint64_t seed = 102) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const Graph g = random_graph(rng, 10, rng.coin());
    const int n = g.vertex_count();
    const VertexFunction f = random_function(rng, n, 3.0);
    const VertexFunction u0 = random_function(rng, n, 2.0);
    const double c = 4.0 * rng.uniform01() - 2.0;
    const int sweeps = 1 + static_cast<int>(rng.below(30));
    const auto t1 = iterate(g, f, u0, sweeps);
    const auto t2 = iterate(g, f + c, u0, sweeps);
    const double tol =
        1e-13 * static_cast<double>(sweeps) *
        (1.0 + t1.u_current.sup_norm() + std::abs(c) * static_cast<double>(sweeps));
    if (sup_distance(t2.u_current, t1.u_current + sweeps * c) > tol) ++violations;
  }
  return violations;
}

// One sweep is nonexpansive in the sup norm, with the sharper two-sided form.
inline int suite_nonexpansive(int count, uint64_t seed = 103) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const Graph g = random_graph(rng, 10, rng.coin());
    const int n = g.vertex_count();
    const VertexFunction f = random_function(rng, n, 3.0);
    const VertexFunction u = random_function(rng, n, 2.0);
    const VertexFunction v = random_function(rng, n, 2.0);
    const VertexFunction du = value_step(g, f, u);
    const VertexFunction dv = value_step(g, f, v);
    const VertexFunction diff = v - u;
    const VertexFunction adiff = dv - du;
    const double slack = 1e-12 * (1.0 + diff.sup_norm());
    if (sup_distance(dv, du) > sup_distance(v, u) + slack) ++violations;
    if (adiff.min() < diff.min() - slack || adiff.max() > diff.max() + slack)
      ++violations;
  }
  return violations;
}

// osc(u_n) <= osc(u_0) + diam^2 osc(f), along the whole trace.
inline int suite_oscillation_bound(int count, uint64_t seed = 104) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const Graph g = random_graph(rng, 9, rng.coin());
    const int n = g.vertex_count();
    const VertexFunction f = random_function(rng, n, 2.0);
    const VertexFunction u0 = random_function(rng, n, 2.0);
    const auto trace = iterate(g, f, u0, 40);
    const double d = static_cast<double>(g.graph_diameter());
    const double bound = u0.oscillation() + d * d * f.oscillation();
    for (int k = 0; k <= trace.n; ++k) {
      const double osc = trace.max_u_history[static_cast<size_t>(k)] -
                         trace.min_u_history[static_cast<size_t>(k)];
      if (osc > bound + 1e-9) ++violations;
    }
  }
  return violations;
}

// M_k non-increasing, m_k non-decreasing, m_k <= M_k.
inline int suite_increment_monotone(int count, uint64_t seed = 105) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const Graph g = random_graph(rng, 9, rng.coin());
    const int n = g.vertex_count();
    const VertexFunction f = random_function(rng, n, 2.0);
    const VertexFunction u0 = random_function(rng, n, 2.0);
    const auto trace = iterate(g, f, u0, 30);
    const double slack = 1e-12 * (1.0 + f.sup_norm() + u0.sup_norm());
    for (size_t k = 0; k < trace.max_increment_history.size(); ++k) {
      if (trace.min_increment_history[k] > trace.max_increment_history[k] + slack)
        ++violations;
      if (k > 0) {
        if (trace.max_increment_history[k] > trace.max_increment_history[k - 1] + slack)
          ++violations;
        if (trace.min_increment_history[k] < trace.min_increment_history[k - 1] - slack)
          ++violations;
      }
    }
  }
  return violations;
}

// Advantage transforms affinely: c_{a f + b} = a c_f + b, read off brackets
// computed at identical sweep counts.
inline int suite_scaling_laws(int count, uint64_t seed = 106) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const Graph g = random_graph(rng, 8, rng.coin());
    const int n = g.vertex_count();
    const VertexFunction f = random_function(rng, n, 2.0);
    const double a = (rng.coin() ? 1.0 : -1.0) * (0.25 + 3.0 * rng.uniform01());
    const double b = 4.0 * rng.uniform01() - 2.0;
    const long sweeps = 200;
    const auto base = advantage_bracket(g, f, sweeps);
    const auto scaled = advantage_bracket(g, a * f + b, sweeps);
    const double lo = a > 0 ? a * base.lower + b : a * base.upper + b;
    const double hi = a > 0 ? a * base.upper + b : a * base.lower + b;
    const double tol = 1e-10 * (1.0 + std::abs(lo) + std::abs(hi));
    if (std::abs(scaled.lower - lo) > tol || std::abs(scaled.upper - hi) > tol)
      ++violations;
  }
  return violations;
}

// Step comparison on exact 1-d grids: if -Lap_eps u <= f1 pointwise then the
// eps max-filter of u satisfies the 2eps and eps inequalities, and with a
// second bound at 2eps also the 3eps combination (8 f2_bar + f1_bar)/9.
inline int suite_step_comparison(int count, uint64_t seed = 107) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const int points = 21 + static_cast<int>(rng.below(60));
    const int k = 2 + static_cast<int>(rng.below(4));
    const double spacing = 1.0 / static_cast<double>(points - 1);
    const double eps = k * spacing;
    if (6.0 * eps > 1.0) continue;  // keep three ball radii inside the domain scale
    const Graph g = grid_graph(0.0, 1.0, points, eps);
    const VertexFunction u = random_function(rng, points, 2.0);

    const VertexFunction f1 = -1.0 * eps_inf_laplacian(g, u, eps);
    const VertexFunction f2 = -1.0 * eps_inf_laplacian(g, u, 2.0 * eps);
    const VertexFunction ubar = ball_max_filter(g, u, eps);

    const VertexFunction lhs2 = -1.0 * eps_inf_laplacian(g, ubar, 2.0 * eps);
    const VertexFunction rhs2 = ball_max_filter(g, f1, 2.0 * eps);
    const VertexFunction lhs1 = -1.0 * eps_inf_laplacian(g, ubar, eps);
    const VertexFunction rhs1 = ball_max_filter(g, f1, eps);
    const VertexFunction lhs3 = -1.0 * eps_inf_laplacian(g, ubar, 3.0 * eps);
    const VertexFunction f2bar = ball_max_filter(g, f2, 2.0 * eps);

    const double slack =
        1e-11 * (1.0 + u.sup_norm() / (eps * eps) + f1.sup_norm() + f2.sup_norm());
    for (int x = 0; x < points; ++x) {
      if (lhs2[x] > rhs2[x] + slack) ++violations;
      if (lhs1[x] > rhs1[x] + slack) ++violations;
      if (lhs3[x] > (8.0 * f2bar[x] + rhs1[x]) / 9.0 + slack) ++violations;
    }
  }
  return violations;
}

// Every solver output obeys osc(u) <= 2^{diam+1} (||f - c|| + residual).
inline int suite_solution_certificate(int count, uint64_t seed = 108) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const Graph g = random_graph(rng, 7, true);
    const int n = g.vertex_count();
    const VertexFunction f = random_function(rng, n, 2.0);
    const auto res = solve_fixed_point(g, f, 1e-9, 20'000);
    const double bound = std::pow(2.0, g.graph_diameter() + 1) *
                         ((f - res.c).sup_norm() + res.residual);
    if (res.u.oscillation() > bound + 1e-9) ++violations;
  }
  return violations;
}

// Bracket endpoints are monotone under doubling the sweep count.
inline int suite_bracket_validity(int count, uint64_t seed = 109) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const Graph g = random_graph(rng, 9, rng.coin());
    const VertexFunction f = random_function(rng, g.vertex_count(), 2.0);
    const long n = 8 + static_cast<long>(rng.below(64));
    const auto b1 = advantage_bracket(g, f, n);
    const auto b2 = advantage_bracket(g, f, 2 * n);
    const double slack = 1e-11 * (1.0 + f.sup_norm());
    if (b1.lower > b1.upper + slack) ++violations;
    if (b2.lower < b1.lower - slack) ++violations;
    if (b2.upper > b1.upper + slack) ++violations;
  }
  return violations;
}

// Ball filters do not worsen the modulus of continuity on the cloud.
inline int suite_filter_modulus(int count, uint64_t seed = 110) {
  SplitMix64 rng(seed);
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const int points = 17 + static_cast<int>(rng.below(40));
    const double spacing = 1.0 / static_cast<double>(points - 1);
    const int k = 1 + static_cast<int>(rng.below(4));
    const Graph g = grid_graph(0.0, 1.0, points, k * spacing);
    const VertexFunction u = random_function(rng, points, 2.0);
    const double delta = (1 + static_cast<int>(rng.below(5))) * spacing;
    const double osc_u = metric_oscillation(g, u, delta);
    const double slack = 1e-12 * (1.0 + u.sup_norm());
    if (metric_oscillation(g, ball_max_filter(g, u, g.cloud().epsilon()), delta) >
        osc_u + slack)
      ++violations;
    if (metric_oscillation(g, ball_min_filter(g, u, g.cloud().epsilon()), delta) >
        osc_u + slack)
      ++violations;
  }
  return violations;
}

}  // namespace tow::testsupport
