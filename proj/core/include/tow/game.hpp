#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tow/function.hpp"
#include "tow/graph.hpp"
#include "tow/rng.hpp"
#include "tow/value.hpp"

namespace tow {

enum class Role { maximizer, minimizer };

// Move rules for one player. Only the strategies the theory needs: greedy
// play against a table of horizon values, stationary greedy against a fixed
// function, pull-toward-a-target, uniform random, plus an arbitrary callback
// for tests. All tie-breaks go to the lowest vertex index.
class Strategy {
 public:
  using Callback =
      std::function<int(const Graph&, int pos, int step, int horizon, SplitMix64&)>;

  // table = [u_0, u_1, ...]; at step s of a horizon-n game the mover consults
  // u_{n-1-s}, so the table needs at least n entries.
  static Strategy greedy(std::vector<VertexFunction> table);
  static Strategy greedy_stationary(VertexFunction u);
  static Strategy pull_toward(int target);
  static Strategy uniform_random();
  static Strategy custom(Callback fn);

  enum class Kind { greedy, greedy_stationary, pull_toward, uniform_random, custom };
  Kind kind() const { return kind_; }
  int target() const { return target_; }
  const std::vector<VertexFunction>& table() const { return table_; }
  const Callback& callback() const { return callback_; }

 private:
  Strategy() = default;
  Kind kind_ = Kind::uniform_random;
  std::vector<VertexFunction> table_;
  int target_ = 0;
  Callback callback_;
};

// One playout. The payoff is the sum of f over positions 0..n-1 plus the
// terminal payoff at position n, accumulated left to right; re-summing in
// that order reproduces the stored value exactly.
struct GameTranscript {
  std::vector<int> positions;      // length horizon + 1
  std::vector<uint8_t> coin_flips; // 1 = maximizer moved
  double payoff = 0.0;
  uint64_t trial = 0;
};

struct PlayReport {
  double mean_payoff = 0.0;
  double std_error = 0.0;
  long trials = 0;
  uint64_t seed = 0;
  std::vector<GameTranscript> transcripts;
};

struct PlayOptions {
  int keep_transcripts = 0;  // store the first k transcripts
};

// Seeded playouts of the horizon-n game: a fair coin per step, winner moves.
// A strategy returning a non-neighbor aborts the run with an exception.
PlayReport play(const Graph& g, const VertexFunction& f, const VertexFunction& u0,
                int horizon, int start, const Strategy& maximizer,
                const Strategy& minimizer, long trials, uint64_t seed,
                const PlayOptions& opts = {});

struct HittingReport {
  double mean_time = 0.0;
  double std_error = 0.0;
  long trials = 0;
  long cap_hits = 0;
  long step_cap = 0;
  uint64_t seed = 0;
};

// Pull-toward(target) races an arbitrary opponent; T is the first arrival at
// the target. Starts are drawn uniformly per trial unless a start vertex is
// given. Trials are capped at step_cap moves and cap hits are reported.
HittingReport hitting_time_experiment(const Graph& g, int target,
                                      const Strategy& opponent, long trials,
                                      uint64_t seed,
                                      std::optional<int> start = std::nullopt,
                                      long step_cap = 1'000'000);

struct DeviationResult {
  std::string deviator;     // "maximizer" or "minimizer"
  std::string strategy;     // label of the deviation tried
  int start = 0;
  double gain = 0.0;        // deviator's improvement over greedy-vs-greedy
  double band = 0.0;        // 3 * combined standard error
};

struct OptimalityReport {
  std::vector<int> starts;
  std::vector<double> greedy_means;
  std::vector<double> greedy_errors;
  std::vector<double> dp_values;           // u_horizon per start
  std::vector<DeviationResult> deviations;
  double max_deviation_gain = 0.0;
  bool greedy_matches_dp = false;   // every start within 3 standard errors
  bool no_profitable_deviation = false;
};

// Greedy-vs-greedy must reproduce the horizon values; unilateral deviations
// must not profit beyond noise. The trace must carry iterates u_0..u_horizon.
OptimalityReport optimality_gap(const Graph& g, const VertexFunction& f,
                                const VertexFunction& u0, int horizon,
                                const IterationTrace& trace, long trials,
                                uint64_t seed);

}  // namespace tow
