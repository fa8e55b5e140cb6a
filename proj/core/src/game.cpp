#include "tow/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tow {

Strategy Strategy::greedy(std::vector<VertexFunction> table) {
  Strategy s;
  s.kind_ = Kind::greedy;
  s.table_ = std::move(table);
  return s;
}

Strategy Strategy::greedy_stationary(VertexFunction u) {
  Strategy s;
  s.kind_ = Kind::greedy_stationary;
  s.table_ = {std::move(u)};
  return s;
}

Strategy Strategy::pull_toward(int target) {
  Strategy s;
  s.kind_ = Kind::pull_toward;
  s.target_ = target;
  return s;
}

Strategy Strategy::uniform_random() {
  Strategy s;
  s.kind_ = Kind::uniform_random;
  return s;
}

Strategy Strategy::custom(Callback fn) {
  Strategy s;
  s.kind_ = Kind::custom;
  s.callback_ = std::move(fn);
  return s;
}

namespace {

int greedy_move(const Graph& g, const VertexFunction& values, int pos, Role role) {
  int best = -1;
  double best_v = role == Role::maximizer ? -std::numeric_limits<double>::infinity()
                                          : std::numeric_limits<double>::infinity();
  for (int y : g.neighbors(pos)) {  // sorted, so ties keep the lowest index
    const double v = values[y];
    if (role == Role::maximizer ? v > best_v : v < best_v) {
      best_v = v;
      best = y;
    }
  }
  return best;
}

// Strategy with its per-graph tables resolved (BFS distances for pull moves).
// Owns its copy of the strategy so callers may pass temporaries.
struct Prepared {
  Strategy s;
  Role role;
  std::vector<int> dist;  // to the pull target

  int move(const Graph& g, int pos, int step, int horizon, SplitMix64& rng) const {
    switch (s.kind()) {
      case Strategy::Kind::greedy: {
        const auto& table = s.table();
        if (horizon < 0 || static_cast<size_t>(horizon) > table.size()) {
          throw std::invalid_argument("greedy value table shorter than horizon");
        }
        return greedy_move(g, table[static_cast<size_t>(horizon - 1 - step)], pos, role);
      }
      case Strategy::Kind::greedy_stationary:
        return greedy_move(g, s.table().front(), pos, role);
      case Strategy::Kind::pull_toward: {
        int best = -1;
        int best_d = std::numeric_limits<int>::max();
        for (int y : g.neighbors(pos)) {
          if (dist[static_cast<size_t>(y)] < best_d) {
            best_d = dist[static_cast<size_t>(y)];
            best = y;
          }
        }
        return best;
      }
      case Strategy::Kind::uniform_random: {
        const auto nb = g.neighbors(pos);
        return nb[rng.below(nb.size())];
      }
      case Strategy::Kind::custom:
        return s.callback()(g, pos, step, horizon, rng);
    }
    return -1;
  }
};

Prepared prepare(const Graph& g, Strategy s, Role role) {
  Prepared p{std::move(s), role, {}};
  if (p.s.kind() == Strategy::Kind::pull_toward) {
    if (p.s.target() < 0 || p.s.target() >= g.vertex_count())
      throw std::invalid_argument("pull target out of range");
    p.dist = g.bfs_distances(p.s.target());
  }
  return p;
}

void check_move(const Graph& g, int from, int to, const char* who) {
  if (to < 0 || to >= g.vertex_count() || !g.adjacent(from, to)) {
    throw std::runtime_error(std::string(who) + " strategy returned non-neighbor " +
                             std::to_string(to) + " from vertex " +
                             std::to_string(from) + "; trial aborted");
  }
}

struct RunningStats {
  double sum = 0.0, sumsq = 0.0;
  long n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double std_error() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sumsq - static_cast<double>(n) * m * m) /
                                         static_cast<double>(n - 1));
    return std::sqrt(var / static_cast<double>(n));
  }
};

}  // namespace

PlayReport play(const Graph& g, const VertexFunction& f, const VertexFunction& u0,
                int horizon, int start, const Strategy& maximizer,
                const Strategy& minimizer, long trials, uint64_t seed,
                const PlayOptions& opts) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (start < 0 || start >= g.vertex_count())
    throw std::invalid_argument("start vertex out of range");
  if (f.size() != g.vertex_count() || u0.size() != g.vertex_count())
    throw std::invalid_argument("payoff dimensions do not match the graph");

  const Prepared p1 = prepare(g, maximizer, Role::maximizer);
  const Prepared p2 = prepare(g, minimizer, Role::minimizer);

  PlayReport rep;
  rep.trials = trials;
  rep.seed = seed;
  RunningStats stats;
  for (long t = 0; t < trials; ++t) {
    SplitMix64 rng = trial_stream(seed, static_cast<uint64_t>(t));
    const bool keep = t < opts.keep_transcripts;
    GameTranscript tr;
    if (keep) {
      tr.trial = static_cast<uint64_t>(t);
      tr.positions.reserve(static_cast<size_t>(horizon) + 1);
      tr.coin_flips.reserve(static_cast<size_t>(horizon));
    }
    int pos = start;
    double payoff = 0.0;
    if (keep) tr.positions.push_back(pos);
    for (int s = 0; s < horizon; ++s) {
      payoff += f[pos];
      const bool max_moves = rng.coin();
      const Prepared& mover = max_moves ? p1 : p2;
      const int nxt = mover.move(g, pos, s, horizon, rng);
      check_move(g, pos, nxt, max_moves ? "maximizer" : "minimizer");
      pos = nxt;
      if (keep) {
        tr.coin_flips.push_back(max_moves ? 1 : 0);
        tr.positions.push_back(pos);
      }
    }
    payoff += u0[pos];
    stats.add(payoff);
    if (keep) {
      tr.payoff = payoff;
      rep.transcripts.push_back(std::move(tr));
    }
  }
  rep.mean_payoff = stats.mean();
  rep.std_error = stats.std_error();
  return rep;
}

HittingReport hitting_time_experiment(const Graph& g, int target,
                                      const Strategy& opponent, long trials,
                                      uint64_t seed, std::optional<int> start,
                                      long step_cap) {
  if (target < 0 || target >= g.vertex_count())
    throw std::invalid_argument("target vertex out of range");
  if (trials < 1) throw std::invalid_argument("need at least one trial");

  const Prepared puller = prepare(g, Strategy::pull_toward(target), Role::minimizer);
  const Prepared opp = prepare(g, opponent, Role::maximizer);

  HittingReport rep;
  rep.trials = trials;
  rep.step_cap = step_cap;
  rep.seed = seed;
  RunningStats stats;
  for (long t = 0; t < trials; ++t) {
    SplitMix64 rng = trial_stream(seed, static_cast<uint64_t>(t));
    int pos = start ? *start
                    : static_cast<int>(rng.below(
                          static_cast<uint64_t>(g.vertex_count())));
    long steps = 0;
    while (pos != target && steps < step_cap) {
      const bool opp_moves = rng.coin();
      const Prepared& mover = opp_moves ? opp : puller;
      const int nxt = mover.move(g, pos, 0, -1, rng);
      check_move(g, pos, nxt, opp_moves ? "opponent" : "pull");
      pos = nxt;
      ++steps;
    }
    if (pos != target) ++rep.cap_hits;
    stats.add(static_cast<double>(steps));
  }
  rep.mean_time = stats.mean();
  rep.std_error = stats.std_error();
  return rep;
}

OptimalityReport optimality_gap(const Graph& g, const VertexFunction& f,
                                const VertexFunction& u0, int horizon,
                                const IterationTrace& trace, long trials,
                                uint64_t seed) {
  if (static_cast<int>(trace.iterates.size()) < horizon + 1) {
    throw std::invalid_argument(
        "trace must keep iterates u_0..u_horizon (run iterate with keep_iterates)");
  }
  std::vector<VertexFunction> table(trace.iterates.begin(),
                                    trace.iterates.begin() + std::max(horizon, 1));
  const Strategy greedy = Strategy::greedy(table);
  const VertexFunction& dp = trace.iterates[static_cast<size_t>(horizon)];

  OptimalityReport rep;
  rep.greedy_matches_dp = true;
  rep.no_profitable_deviation = true;

  std::vector<std::pair<std::string, Strategy>> deviations;
  deviations.emplace_back("uniform-random", Strategy::uniform_random());
  deviations.emplace_back("pull-toward-0", Strategy::pull_toward(0));
  deviations.emplace_back("pull-toward-last",
                          Strategy::pull_toward(g.vertex_count() - 1));

  for (int start = 0; start < g.vertex_count(); ++start) {
    const PlayReport base =
        play(g, f, u0, horizon, start, greedy, greedy, trials, seed);
    rep.starts.push_back(start);
    rep.greedy_means.push_back(base.mean_payoff);
    rep.greedy_errors.push_back(base.std_error);
    rep.dp_values.push_back(dp[start]);
    if (std::abs(base.mean_payoff - dp[start]) >
        3.0 * base.std_error + 1e-9 * (1.0 + std::abs(dp[start]))) {
      rep.greedy_matches_dp = false;
    }

    for (const auto& [label, dev] : deviations) {
      const PlayReport as_max =
          play(g, f, u0, horizon, start, dev, greedy, trials, seed + 1);
      const PlayReport as_min =
          play(g, f, u0, horizon, start, greedy, dev, trials, seed + 2);
      const double band_max =
          3.0 * std::hypot(base.std_error, as_max.std_error) + 1e-9;
      const double band_min =
          3.0 * std::hypot(base.std_error, as_min.std_error) + 1e-9;
      DeviationResult dmax{"maximizer", label, start,
                           as_max.mean_payoff - base.mean_payoff, band_max};
      DeviationResult dmin{"minimizer", label, start,
                           base.mean_payoff - as_min.mean_payoff, band_min};
      for (auto& d : {dmax, dmin}) {
        rep.max_deviation_gain = std::max(rep.max_deviation_gain, d.gain);
        if (d.gain > d.band) rep.no_profitable_deviation = false;
        rep.deviations.push_back(d);
      }
    }
  }
  return rep;
}

}  // namespace tow
