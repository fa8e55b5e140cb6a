#include "tow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tow/rng.hpp"

namespace tow {

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::fixed_point: return "fixed-point";
    case SolveMethod::averaged: return "averaged";
    case SolveMethod::direct_search: return "direct-search";
  }
  return "?";
}

namespace {

constexpr int kFinisherVertexCap = 800;
constexpr double kPeriodTol = 1e-10;

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

using PairTable = std::vector<std::pair<int, int>>;

PairTable extremal_pairs(const Graph& g, const VertexFunction& u) {
  PairTable p(static_cast<size_t>(g.vertex_count()));
  for (int x = 0; x < g.vertex_count(); ++x) {
    const auto e = neighbor_extremes(g, u, x);
    p[static_cast<size_t>(x)] = {e.arg_lo, e.arg_hi};
  }
  return p;
}

// Dense LU with partial pivoting; solves in place, returns false when a pivot
// degenerates.
bool lu_solve(std::vector<double>& a, std::vector<double>& b, int n) {
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  const double tiny = std::max(scale, 1.0) * 1e-12;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[static_cast<size_t>(r) * n + col]) >
          std::abs(a[static_cast<size_t>(pivot) * n + col]))
        pivot = r;
    }
    if (std::abs(a[static_cast<size_t>(pivot) * n + col]) < tiny) return false;
    if (pivot != col) {
      for (int k = 0; k < n; ++k)
        std::swap(a[static_cast<size_t>(pivot) * n + k],
                  a[static_cast<size_t>(col) * n + k]);
      std::swap(b[static_cast<size_t>(pivot)], b[static_cast<size_t>(col)]);
    }
    const double inv = 1.0 / a[static_cast<size_t>(col) * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double m = a[static_cast<size_t>(r) * n + col] * inv;
      if (m == 0.0) continue;
      a[static_cast<size_t>(r) * n + col] = 0.0;
      for (int k = col + 1; k < n; ++k)
        a[static_cast<size_t>(r) * n + k] -= m * a[static_cast<size_t>(col) * n + k];
      b[static_cast<size_t>(r)] -= m * b[static_cast<size_t>(col)];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[static_cast<size_t>(r)];
    for (int k = r + 1; k < n; ++k)
      s -= a[static_cast<size_t>(r) * n + k] * b[static_cast<size_t>(k)];
    b[static_cast<size_t>(r)] = s / a[static_cast<size_t>(r) * n + r];
  }
  return true;
}

// Once the extremal-neighbor structure is frozen, the equation
// u(x) - (u(a_x) + u(b_x))/2 + c = f(x) is affine; solving it with the gauge
// u(0) = 0 yields an exact candidate that is then verified against the true
// (unfrozen) operator.
struct AffineCandidate {
  VertexFunction u;
  double c;
};

std::optional<AffineCandidate> affine_solve(const Graph& g,
                                            const VertexFunction& f,
                                            const PairTable& pairs) {
  const int vc = g.vertex_count();
  if (vc > kFinisherVertexCap) return std::nullopt;
  const int n = vc + 1;
  std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> b(static_cast<size_t>(n), 0.0);
  for (int x = 0; x < vc; ++x) {
    auto row = [&](int col) -> double& {
      return a[static_cast<size_t>(x) * n + col];
    };
    row(x) += 1.0;
    row(pairs[static_cast<size_t>(x)].first) -= 0.5;
    row(pairs[static_cast<size_t>(x)].second) -= 0.5;
    row(vc) += 1.0;
    b[static_cast<size_t>(x)] = f[x];
  }
  a[static_cast<size_t>(vc) * n + 0] = 1.0;  // gauge u(0) = 0
  b[static_cast<size_t>(vc)] = 0.0;
  if (!lu_solve(a, b, n)) return std::nullopt;
  const double c = b[static_cast<size_t>(vc)];
  b.pop_back();
  for (double v : b) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  return AffineCandidate{VertexFunction(std::move(b)), c};
}

void normalize_gauge(VertexFunction& u) {
  const double u0 = u[0];
  for (int i = 0; i < u.size(); ++i) u[i] -= u0;
}

struct Best {
  VertexFunction u;
  double c = 0.0;
  double residual = std::numeric_limits<double>::infinity();

  void offer(const Graph& g, const VertexFunction& f, const VertexFunction& cand,
             double cand_c) {
    VertexFunction v = cand;
    normalize_gauge(v);
    const double r = equation_residual(g, f, v, cand_c);
    if (r < residual) {
      residual = r;
      u = std::move(v);
      c = cand_c;
    }
  }
};

}  // namespace

SolveResult solve_fixed_point(const Graph& g, const VertexFunction& f,
                              double tol, long n_max) {
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  const int vc = g.vertex_count();

  VertexFunction v = VertexFunction::zeros(vc);
  VertexFunction w = VertexFunction::zeros(vc);
  Best best;
  best.offer(g, f, v, 0.5 * (f.max() + f.min()));

  std::vector<double> residual_history;
  PairTable prev_pairs;
  long sweeps = 0;
  bool stable_structure = false;

  while (sweeps < n_max && best.residual > tol) {
    PairTable pairs(static_cast<size_t>(vc));
    double inc_max = -std::numeric_limits<double>::infinity();
    double inc_min = std::numeric_limits<double>::infinity();
    for (int x = 0; x < vc; ++x) {
      const auto e = neighbor_extremes(g, v, x);
      w[x] = 0.5 * (e.lo + e.hi) + f[x];
      pairs[static_cast<size_t>(x)] = {e.arg_lo, e.arg_hi};
      const double d = w[x] - v[x];
      inc_max = std::max(inc_max, d);
      inc_min = std::min(inc_min, d);
    }
    ++sweeps;
    const double c_k = 0.5 * (inc_max + inc_min);
    const double r_k = std::max(inc_max - c_k, c_k - inc_min);
    residual_history.push_back(r_k);
    for (int x = 0; x < vc; ++x) v[x] = w[x] - c_k;
    best.offer(g, f, v, c_k);

    stable_structure = !prev_pairs.empty() && pairs == prev_pairs;
    if (stable_structure && best.residual > tol) {
      if (auto cand = affine_solve(g, f, pairs)) best.offer(g, f, cand->u, cand->c);
    }
    prev_pairs = std::move(pairs);
  }

  SolveResult res;
  res.u = best.u;
  res.c = best.c;
  res.residual = best.residual;
  res.iterations = sweeps;
  res.method = SolveMethod::fixed_point;
  res.converged = best.residual <= tol;
  if (auto fit = detail::fit_geometric_rate(residual_history,
                                            residual_history.size() / 2,
                                            residual_history.size(), 10)) {
    if (fit->first > 0.0 && fit->first < 1.0) res.rate_alpha = fit->first;
  }
  if (!res.converged) {
    res.diagnostic = "residual " + std::to_string(best.residual) + " above tol after " +
                     std::to_string(sweeps) + " sweeps";
    bool loops = true;
    for (int x = 0; x < vc && loops; ++x) loops = g.has_loop(x);
    if (!loops)
      res.diagnostic += "; graph has loop-free vertices, convergence is not guaranteed";
  }
  return res;
}

namespace {

// One pass of c <- root of the mean residual (it is linear in c), then a
// lowest-index Gauss-Seidel sweep of u, then re-gauging.
double gauss_seidel_sweep(const Graph& g, const VertexFunction& f,
                          VertexFunction& u, double c_prev) {
  const int vc = g.vertex_count();
  double mean = 0.0;
  for (int x = 0; x < vc; ++x) {
    const auto e = neighbor_extremes(g, u, x);
    mean += 0.5 * (e.lo + e.hi) + f[x] - u[x];
  }
  double c = mean / vc;
  if (!std::isfinite(c)) c = c_prev;
  for (int x = 0; x < vc; ++x) {
    const auto e = neighbor_extremes(g, u, x);
    u[x] = 0.5 * (e.lo + e.hi) + f[x] - c;
  }
  normalize_gauge(u);
  return c;
}

}  // namespace

SolveResult solve_general(const Graph& g, const VertexFunction& f, double tol,
                          long n_max, int restarts) {
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  if (restarts < 0) throw std::invalid_argument("restarts must be nonnegative");
  const int vc = g.vertex_count();

  Best best;
  best.offer(g, f, VertexFunction::zeros(vc), 0.5 * (f.max() + f.min()));
  long sweeps = 0;
  SolveMethod method = SolveMethod::direct_search;

  // Phase 1: plain iteration from zero; detects convergence, a frozen
  // extremal structure, or a period-2 cycle.
  {
    VertexFunction u_km1 = VertexFunction::zeros(vc);
    VertexFunction u_k = value_step(g, f, u_km1);
    VertexFunction u_kp1 = value_step(g, f, u_k);
    sweeps += 2;
    PairTable prev_pairs;
    const long phase1 = std::min<long>(n_max / 2, 4000);
    while (sweeps < phase1 && best.residual > tol) {
      VertexFunction d1 = u_k - u_km1;
      const double c_k = 0.5 * (d1.max() + d1.min());
      best.offer(g, f, u_k, c_k);
      if (best.residual <= tol) {
        method = SolveMethod::fixed_point;
        break;
      }

      VertexFunction d2 = u_kp1 - u_k;
      VertexFunction u_kp2 = value_step(g, f, u_kp1);
      ++sweeps;
      VertexFunction d3 = u_kp2 - u_kp1;
      if (sup_distance(d1, d3) <= kPeriodTol && sup_distance(d1, d2) > kPeriodTol) {
        // period-2 cycle: the two-step average with the drift removed is the
        // natural candidate (exact for bipartite alternation)
        VertexFunction seed = 0.5 * ((u_k + u_kp1) - c_k);
        best.offer(g, f, seed, c_k);
        if (best.residual <= tol) method = SolveMethod::averaged;
        break;
      }

      PairTable pairs = extremal_pairs(g, u_kp1);
      if (!prev_pairs.empty() && pairs == prev_pairs) {
        if (auto cand = affine_solve(g, f, pairs)) {
          best.offer(g, f, cand->u, cand->c);
          if (best.residual <= tol) break;
        }
      }
      prev_pairs = std::move(pairs);
      u_km1 = std::move(u_k);
      u_k = std::move(u_kp1);
      u_kp1 = std::move(u_kp2);
    }
  }

  // Phase 2: Gauss-Seidel coordinate descent with scalar c updates, restarted
  // from deterministic perturbations of the best iterate.
  SplitMix64 noise(0x7057u);
  for (int attempt = 0; attempt <= restarts && best.residual > tol && sweeps < n_max;
       ++attempt) {
    VertexFunction u = best.u;
    if (attempt > 0) {
      const double amp =
          std::max(best.residual, 1e-3 * (1.0 + f.oscillation())) * std::pow(0.5, attempt - 1);
      for (int i = 0; i < vc; ++i)
        u[i] += amp * (2.0 * noise.uniform01() - 1.0);
    }
    double c = best.c;
    PairTable prev_pairs;
    const long slice = std::max<long>(64, (n_max - sweeps) / (restarts + 1 - attempt));
    long used = 0;
    while (used < slice && sweeps < n_max) {
      c = gauss_seidel_sweep(g, f, u, c);
      ++sweeps;
      ++used;
      best.offer(g, f, u, c);
      if (best.residual <= tol) break;
      PairTable pairs = extremal_pairs(g, u);
      if (!prev_pairs.empty() && pairs == prev_pairs) {
        if (auto cand = affine_solve(g, f, pairs)) {
          best.offer(g, f, cand->u, cand->c);
          if (best.residual <= tol) break;
        }
      }
      prev_pairs = std::move(pairs);
    }
  }

  SolveResult res;
  res.u = best.u;
  res.c = best.c;
  res.residual = best.residual;
  res.iterations = sweeps;
  res.method = method;
  res.converged = best.residual <= tol;
  if (!res.converged) {
    res.diagnostic = "all restarts exhausted, best residual " +
                     std::to_string(best.residual) +
                     " (failure does not imply nonexistence)";
  }
  return res;
}

Verification verify_solution(const Graph& g, const VertexFunction& f,
                             const VertexFunction& u, double tol) {
  Verification v;
  v.residual = equation_residual(g, f, u, 0.0);
  v.accepted = v.residual <= tol;
  return v;
}

StabilizationReport analyze_stabilization(const Graph& g, const VertexFunction& f,
                                          const IterationTrace& trace) {
  (void)g;
  (void)f;
  if (trace.extremal_pairs.empty() ||
      trace.extremal_pairs.size() != static_cast<size_t>(trace.n)) {
    throw std::invalid_argument(
        "trace must be recorded with record_extremal_pairs");
  }
  StabilizationReport rep;
  const size_t n = trace.extremal_pairs.size();
  const double c_est =
      0.5 * (trace.max_increment_history.back() + trace.min_increment_history.back());
  rep.drift = c_est;

  // first sweep index from which the pair table no longer changes
  size_t stable_from = 0;
  for (size_t k = n - 1; k >= 1; --k) {
    if (trace.extremal_pairs[k] != trace.extremal_pairs[k - 1]) {
      stable_from = k;
      break;
    }
  }

  // recentred increment deviations; sweep k (0-based) produced u_{k+1}
  std::vector<double> dev(n);
  double scale = 1.0;
  for (size_t k = 0; k < n; ++k) {
    dev[k] = std::max(std::abs(trace.max_increment_history[k] - c_est),
                      std::abs(trace.min_increment_history[k] - c_est));
    scale = std::max(scale, std::abs(trace.max_increment_history[k]));
  }
  const bool decayed = dev.back() <= 0.5 * dev[stable_from] + 1e-14 * scale;
  if (!decayed) return rep;  // e.g. a period-2 cycle: pairs freeze but nothing decays

  rep.stabilized_at = static_cast<int>(stable_from);

  const size_t lo = stable_from + (n - stable_from) / 2;
  if (auto fit = detail::fit_geometric_rate(dev, lo, n, 10)) {
    if (fit->first > 0.0 && fit->first < 1.0) {
      rep.rate_alpha = fit->first;
      rep.r_squared = fit->second;
    }
  }
  return rep;
}

namespace detail {

std::optional<std::pair<double, double>> fit_geometric_rate(
    const std::vector<double>& values, size_t from, size_t to,
    size_t min_points) {
  double floor = 0.0;
  for (size_t i = from; i < to && i < values.size(); ++i)
    floor = std::max(floor, values[i]);
  floor *= 1e-13;  // ignore entries at the double-precision noise floor

  std::vector<std::pair<double, double>> pts;
  for (size_t i = from; i < to && i < values.size(); ++i) {
    if (values[i] > floor && values[i] > 0.0)
      pts.emplace_back(static_cast<double>(i), std::log(values[i]));
  }
  if (pts.size() < min_points) return std::nullopt;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / m;
  for (auto [x, y] : pts) {
    const double e = y - (intercept + slope * x);
    ss_res += e * e;
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return std::make_pair(std::exp(slope), r2);
}

}  // namespace detail

}  // namespace tow
