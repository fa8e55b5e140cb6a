#include "tow/value.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace tow {

namespace {

void require_on_graph(const Graph& g, const VertexFunction& v, const char* what) {
  if (v.size() != g.vertex_count()) {
    throw std::invalid_argument(std::string(what) + " has " +
                                std::to_string(v.size()) + " entries, graph has " +
                                std::to_string(g.vertex_count()) + " vertices");
  }
}

struct Extremes {
  double lo, hi;
  int arg_lo, arg_hi;
};

inline Extremes neighbor_extremes(const Graph& g, const VertexFunction& u, int x) {
  Extremes e{std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -1, -1};
  for (int y : g.neighbors(x)) {
    const double v = u[y];
    if (v < e.lo) {
      e.lo = v;
      e.arg_lo = y;
    }
    if (v > e.hi) {
      e.hi = v;
      e.arg_hi = y;
    }
  }
  return e;
}

}  // namespace

VertexFunction value_step(const Graph& g, const VertexFunction& f,
                          const VertexFunction& u) {
  require_on_graph(g, f, "running payoff");
  require_on_graph(g, u, "value function");
  const int n = g.vertex_count();
  std::vector<double> out(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    const auto e = neighbor_extremes(g, u, x);
    out[static_cast<size_t>(x)] = 0.5 * (e.lo + e.hi) + f[x];
  }
  return VertexFunction(std::move(out));
}

IterationTrace iterate(const Graph& g, const VertexFunction& f,
                       const VertexFunction& u0, int n,
                       const IterateOptions& opts) {
  if (n < 0) throw std::invalid_argument("sweep count must be nonnegative");
  require_on_graph(g, f, "running payoff");
  require_on_graph(g, u0, "terminal payoff");

  IterationTrace trace;
  trace.n = n;
  trace.max_u_history.reserve(static_cast<size_t>(n) + 1);
  trace.min_u_history.reserve(static_cast<size_t>(n) + 1);
  trace.max_increment_history.reserve(static_cast<size_t>(n));
  trace.min_increment_history.reserve(static_cast<size_t>(n));
  trace.increment_sup_norm.reserve(static_cast<size_t>(n));

  VertexFunction u = u0;
  trace.max_u_history.push_back(u.max());
  trace.min_u_history.push_back(u.min());
  if (opts.keep_iterates) trace.iterates.push_back(u);

  const int vc = g.vertex_count();
  VertexFunction next = VertexFunction::zeros(vc);
  for (int k = 0; k < n; ++k) {
    std::vector<std::pair<int, int>> pairs;
    if (opts.record_extremal_pairs) pairs.resize(static_cast<size_t>(vc));
    double M = -std::numeric_limits<double>::infinity();
    double m = std::numeric_limits<double>::infinity();
    double sup = 0.0;
    for (int x = 0; x < vc; ++x) {
      const auto e = neighbor_extremes(g, u, x);
      const double v = 0.5 * (e.lo + e.hi) + f[x];
      const double d = v - u[x];
      M = std::max(M, d);
      m = std::min(m, d);
      sup = std::max(sup, std::abs(d));
      next[x] = v;
      if (opts.record_extremal_pairs)
        pairs[static_cast<size_t>(x)] = {e.arg_lo, e.arg_hi};
    }
    std::swap(u, next);
    trace.max_u_history.push_back(u.max());
    trace.min_u_history.push_back(u.min());
    trace.max_increment_history.push_back(M);
    trace.min_increment_history.push_back(m);
    trace.increment_sup_norm.push_back(sup);
    if (opts.record_extremal_pairs) trace.extremal_pairs.push_back(std::move(pairs));
    if (opts.keep_iterates) trace.iterates.push_back(u);
  }
  trace.u_current = std::move(u);
  return trace;
}

AdvantageBracket advantage_bracket(const Graph& g, const VertexFunction& f,
                                   long n_max, double tol) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  require_on_graph(g, f, "running payoff");

  const int vc = g.vertex_count();
  VertexFunction u = VertexFunction::zeros(vc);
  VertexFunction next = VertexFunction::zeros(vc);
  AdvantageBracket b;
  for (long k = 1; k <= n_max; ++k) {
    for (int x = 0; x < vc; ++x) {
      const auto e = neighbor_extremes(g, u, x);
      next[x] = 0.5 * (e.lo + e.hi) + f[x];
    }
    std::swap(u, next);
    b.lower = u.min() / static_cast<double>(k);
    b.upper = u.max() / static_cast<double>(k);
    b.n = k;
    if (b.width() <= tol) {
      b.tol_met = true;
      break;
    }
  }
  return b;
}

double equation_residual(const Graph& g, const VertexFunction& f,
                         const VertexFunction& u, double c) {
  require_on_graph(g, f, "running payoff");
  require_on_graph(g, u, "candidate solution");
  double r = 0.0;
  for (int x = 0; x < g.vertex_count(); ++x) {
    const auto e = neighbor_extremes(g, u, x);
    r = std::max(r, std::abs(0.5 * (e.lo + e.hi) + f[x] - c - u[x]));
  }
  return r;
}

namespace {

enum class BallExtreme { take_max, take_min };

VertexFunction ball_filter(const Graph& g, const VertexFunction& u, double r,
                           BallExtreme mode) {
  if (r <= 0.0) throw std::invalid_argument("filter radius must be positive");
  const PointCloud& cloud = g.cloud();
  require_on_graph(g, u, "filter input");
  const int n = cloud.size();
  std::vector<double> out(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    double best = u[x];
    for (int y = 0; y < n; ++y) {
      if (!cloud.in_ball(x, y, r)) continue;
      if (mode == BallExtreme::take_max)
        best = std::max(best, u[y]);
      else
        best = std::min(best, u[y]);
    }
    out[static_cast<size_t>(x)] = best;
  }
  return VertexFunction(std::move(out));
}

}  // namespace

VertexFunction ball_max_filter(const Graph& g, const VertexFunction& u, double r) {
  return ball_filter(g, u, r, BallExtreme::take_max);
}

VertexFunction ball_min_filter(const Graph& g, const VertexFunction& u, double r) {
  return ball_filter(g, u, r, BallExtreme::take_min);
}

double metric_oscillation(const Graph& g, const VertexFunction& u, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("oscillation radius must be positive");
  const VertexFunction lo = ball_min_filter(g, u, delta);
  double osc = 0.0;
  for (int x = 0; x < u.size(); ++x) osc = std::max(osc, u[x] - lo[x]);
  return osc;
}

VertexFunction inf_laplacian(const Graph& g, const VertexFunction& u) {
  require_on_graph(g, u, "input");
  const int n = g.vertex_count();
  std::vector<double> out(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    const auto e = neighbor_extremes(g, u, x);
    out[static_cast<size_t>(x)] = 0.5 * (e.lo + e.hi) - u[x];
  }
  return VertexFunction(std::move(out));
}

VertexFunction eps_inf_laplacian(const Graph& g, const VertexFunction& u, double r) {
  const VertexFunction hi = ball_max_filter(g, u, r);
  const VertexFunction lo = ball_min_filter(g, u, r);
  const int n = u.size();
  std::vector<double> out(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    out[static_cast<size_t>(x)] = (lo[x] + hi[x] - 2.0 * u[x]) / (r * r);
  }
  return VertexFunction(std::move(out));
}

}  // namespace tow
