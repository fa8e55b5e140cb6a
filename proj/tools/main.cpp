// tow: horizon-n tug-of-war game values on graphs, long-term advantage
// brackets, discrete infinity-Laplace solves, the eps->0 continuation, and
// seeded Monte Carlo playouts.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tow/examples.hpp"
#include "tow/game.hpp"
#include "tow/io.hpp"
#include "tow/solver.hpp"

namespace {

using nlohmann::json;
using namespace tow;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitDiagnostic = 2;

std::string resolve_out(const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  if (const char* dir = std::getenv("TOW_OUTPUT_DIR")) {
    return (std::filesystem::path(dir) / p).string();
  }
  return path;
}

void log_config(const json& config) {
  std::cerr << "config: " << config.dump() << "\n";
}

ScalarField parse_field(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "const") {
    const double v = std::stod(args);
    return [v](std::span<const double>) { return v; };
  }
  if (kind == "poly" || kind == "radial-poly") {
    const std::vector<double> coeff = io::parse_inline_values(args).values();
    const bool radial = kind == "radial-poly";
    return [coeff, radial](std::span<const double> p) {
      double t = 0.0;
      if (radial) {
        for (double c : p) t += c * c;
        t = std::sqrt(t);
      } else {
        t = p[0];
      }
      double acc = 0.0;
      for (size_t k = coeff.size(); k-- > 0;) acc = acc * t + coeff[k];
      return acc;
    };
  }
  if (kind == "pwl") {
    // knots "x0:y0,x1:y1,..." sorted by x; linear interpolation, clamped ends
    std::vector<std::pair<double, double>> knots;
    std::string cur;
    auto flush = [&] {
      if (cur.empty()) return;
      const auto mid = cur.find(':');
      if (mid == std::string::npos)
        throw std::runtime_error("pwl knot needs x:y, got '" + cur + "'");
      knots.emplace_back(std::stod(cur.substr(0, mid)), std::stod(cur.substr(mid + 1)));
      cur.clear();
    };
    for (char c : args) {
      if (c == ',')
        flush();
      else
        cur += c;
    }
    flush();
    if (knots.size() < 2) throw std::runtime_error("pwl needs at least two knots");
    for (size_t i = 1; i < knots.size(); ++i) {
      if (knots[i].first <= knots[i - 1].first)
        throw std::runtime_error("pwl knots must be strictly increasing in x");
    }
    return [knots](std::span<const double> p) {
      const double x = p[0];
      if (x <= knots.front().first) return knots.front().second;
      for (size_t i = 1; i < knots.size(); ++i) {
        if (x <= knots[i].first) {
          const double t =
              (x - knots[i - 1].first) / (knots[i].first - knots[i - 1].first);
          return knots[i - 1].second + t * (knots[i].second - knots[i - 1].second);
        }
      }
      return knots.back().second;
    };
  }
  throw std::runtime_error("unknown field spec '" + spec +
                           "' (use const:v, poly:c0,c1,..., radial-poly:..., pwl:x:y,...)");
}

Strategy parse_strategy(const std::string& spec, const IterationTrace* trace,
                        int horizon) {
  if (spec == "greedy") {
    if (!trace || static_cast<int>(trace->iterates.size()) < horizon)
      throw std::runtime_error("greedy strategy needs the horizon value table");
    return Strategy::greedy(std::vector<VertexFunction>(
        trace->iterates.begin(), trace->iterates.begin() + std::max(horizon, 1)));
  }
  if (spec == "uniform") return Strategy::uniform_random();
  if (spec.rfind("pull:", 0) == 0)
    return Strategy::pull_toward(std::stoi(spec.substr(5)));
  throw std::runtime_error("unknown strategy '" + spec +
                           "' (use greedy, uniform, pull:<vertex>)");
}

struct GraphInput {
  Graph graph;
  VertexFunction f;
  VertexFunction u0;
};

Graph load_graph(const std::string& graph_path, const std::string& cloud_path) {
  if (graph_path.empty() == cloud_path.empty())
    throw std::runtime_error("give exactly one of --graph or --cloud");
  if (!cloud_path.empty())
    return Graph::eps_adjacency(io::read_point_cloud(cloud_path));
  return io::read_graph(graph_path);
}

GraphInput load_graph_input(const std::string& graph_path, const std::string& cloud_path,
                            const std::string& f_text, const std::string& f_path,
                            const std::string& u0_text) {
  Graph g = load_graph(graph_path, cloud_path);
  VertexFunction f = !f_text.empty()
                         ? io::parse_inline_values(f_text)
                         : io::read_vertex_function(f_path, g.vertex_count());
  if (f.size() != g.vertex_count())
    throw std::runtime_error("running payoff has " + std::to_string(f.size()) +
                             " entries, graph has " +
                             std::to_string(g.vertex_count()) + " vertices");
  VertexFunction u0 = u0_text.empty() ? VertexFunction::zeros(g.vertex_count())
                                      : io::parse_inline_values(u0_text);
  if (u0.size() != g.vertex_count())
    throw std::runtime_error("terminal payoff dimension mismatch");
  return GraphInput{std::move(g), std::move(f), std::move(u0)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tug-of-war game values, advantage constants and the discrete "
               "infinity-Laplace equation on graphs and sampled domains"};
  app.require_subcommand(1);

  std::string graph_path, cloud_path, f_text, f_path, u0_text, out_path, domain_path, field_spec;
  double tol = 1e-9;
  long n_max = 1'000'000;
  long n = 10'000;
  uint64_t seed = 0;

  // iterate
  auto* cmd_iterate = app.add_subcommand("iterate", "run n sweeps of value iteration, export the trace");
  cmd_iterate->add_option("--graph", graph_path, "edge-list graph file");
  cmd_iterate->add_option("--cloud", cloud_path, "point-cloud CSV (eps-adjacency graph)");
  cmd_iterate->add_option("--f", f_text, "inline payoff values, e.g. \"-1,2,-1\"");
  cmd_iterate->add_option("--f-file", f_path, "payoff CSV (vertex_index,value)");
  cmd_iterate->add_option("--u0", u0_text, "inline terminal payoff (default zero)");
  long iterate_n = 100;
  cmd_iterate->add_option("--n", iterate_n, "sweep count");
  cmd_iterate->add_option("--out", out_path, "trace CSV path");

  // cf
  auto* cmd_cf = app.add_subcommand("cf", "bracket the long-term advantage constant");
  cmd_cf->add_option("--graph", graph_path, "edge-list graph file");
  cmd_cf->add_option("--cloud", cloud_path, "point-cloud CSV (eps-adjacency graph)");
  cmd_cf->add_option("--f", f_text);
  cmd_cf->add_option("--f-file", f_path);
  cmd_cf->add_option("--n", n, "max sweeps");
  double cf_tol = 0.0;
  cmd_cf->add_option("--tol", cf_tol, "early-stop width");
  cmd_cf->add_option("--out", out_path, "bracket JSON path");

  // solve
  auto* cmd_solve = app.add_subcommand("solve", "find (u, c) with residual <= tol");
  cmd_solve->add_option("--graph", graph_path, "edge-list graph file");
  cmd_solve->add_option("--cloud", cloud_path, "point-cloud CSV (eps-adjacency graph)");
  cmd_solve->add_option("--f", f_text);
  cmd_solve->add_option("--f-file", f_path);
  cmd_solve->add_option("--tol", tol);
  cmd_solve->add_option("--n-max", n_max);
  std::string method = "auto";
  cmd_solve->add_option("--method", method)->check(CLI::IsMember({"auto", "fixed-point", "general"}));
  cmd_solve->add_option("--out", out_path, "result JSON path");

  // continuum
  auto* cmd_cont = app.add_subcommand("continuum", "solve the eps-step equation on a sampled domain");
  cmd_cont->add_option("--domain", domain_path)->required();
  cmd_cont->add_option("--field", field_spec)->required();
  double eps = 0.1;
  cmd_cont->add_option("--eps", eps)->required();
  cmd_cont->add_option("--tol", tol);
  cmd_cont->add_option("--out", out_path, "solution JSON path");
  std::string plot_path;
  cmd_cont->add_option("--plot", plot_path, "plot-ready x,u CSV (1-d domains)");

  // ladder
  auto* cmd_ladder = app.add_subcommand("ladder", "advantage constants along shrinking eps");
  cmd_ladder->add_option("--domain", domain_path)->required();
  cmd_ladder->add_option("--field", field_spec)->required();
  double base_eps = 0.2;
  int depth = 3;
  std::string schedule = "halving";
  cmd_ladder->add_option("--base-eps", base_eps)->required();
  cmd_ladder->add_option("--depth", depth);
  cmd_ladder->add_option("--schedule", schedule)->check(CLI::IsMember({"halving", "thirding"}));
  cmd_ladder->add_option("--out", out_path, "ladder CSV path");

  // simulate
  auto* cmd_sim = app.add_subcommand("simulate", "seeded Monte Carlo playouts or hitting times");
  cmd_sim->add_option("--graph", graph_path, "edge-list graph file");
  cmd_sim->add_option("--cloud", cloud_path, "point-cloud CSV (eps-adjacency graph)");
  cmd_sim->add_option("--f", f_text);
  cmd_sim->add_option("--f-file", f_path);
  cmd_sim->add_option("--u0", u0_text);
  int horizon = 10, start = 0;
  long trials = 10'000;
  std::string s1 = "greedy", s2 = "greedy", transcripts_path, opponent;
  int hitting_target = -1;
  cmd_sim->add_option("--horizon", horizon);
  cmd_sim->add_option("--start", start);
  cmd_sim->add_option("--s1", s1, "maximizer strategy");
  cmd_sim->add_option("--s2", s2, "minimizer strategy");
  cmd_sim->add_option("--trials", trials);
  cmd_sim->add_option("--seed", seed);
  cmd_sim->add_option("--hitting-target", hitting_target,
                      "run a hitting-time experiment toward this vertex");
  cmd_sim->add_option("--opponent", opponent, "opponent strategy for hitting mode");
  cmd_sim->add_option("--transcripts", transcripts_path, "transcript CSV path");
  cmd_sim->add_option("--out", out_path, "report JSON path");

  // examples
  auto* cmd_examples = app.add_subcommand("examples", "machine-checked worked examples");
  std::string example_name = "all";
  cmd_examples->add_option("--name", example_name);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_iterate) {
      auto in = load_graph_input(graph_path, cloud_path, f_text, f_path, u0_text);
      json config{{"command", "iterate"}, {"graph", graph_path}, {"cloud", cloud_path}, {"n", iterate_n}};
      log_config(config);
      const auto trace = iterate(in.graph, in.f, in.u0, static_cast<int>(iterate_n));
      if (!out_path.empty()) io::write_trace_csv(trace, resolve_out(out_path));
      std::printf("n=%d max_u=%.17g min_u=%.17g M_n=%.17g m_n=%.17g\n", trace.n,
                  trace.max_u_history.back(), trace.min_u_history.back(),
                  trace.last_max_increment(), trace.last_min_increment());
      return kExitOk;
    }

    if (*cmd_cf) {
      auto in = load_graph_input(graph_path, cloud_path, f_text, f_path, "");
      json config{{"command", "cf"}, {"graph", graph_path}, {"cloud", cloud_path}, {"n", n}, {"tol", cf_tol}};
      log_config(config);
      const auto b = advantage_bracket(in.graph, in.f, n, cf_tol);
      if (!out_path.empty()) io::write_bracket_json(b, resolve_out(out_path), config.dump());
      std::printf("lower=%.17g upper=%.17g n=%ld width=%.3g tol_met=%d\n", b.lower,
                  b.upper, b.n, b.width(), b.tol_met);
      return kExitOk;
    }

    if (*cmd_solve) {
      auto in = load_graph_input(graph_path, cloud_path, f_text, f_path, "");
      json config{{"command", "solve"}, {"graph", graph_path}, {"cloud", cloud_path}, {"tol", tol},
                  {"n_max", n_max}, {"method", method}};
      log_config(config);
      bool loops_everywhere = true;
      for (int x = 0; x < in.graph.vertex_count(); ++x)
        loops_everywhere = loops_everywhere && in.graph.has_loop(x);
      SolveResult res;
      if (method == "fixed-point" || (method == "auto" && loops_everywhere)) {
        res = solve_fixed_point(in.graph, in.f, tol, n_max);
      } else {
        res = solve_general(in.graph, in.f, tol, n_max);
      }
      if (!out_path.empty()) io::write_solve_json(res, resolve_out(out_path), config.dump());
      std::printf("c=%.17g residual=%.3g iterations=%ld method=%s converged=%d\n",
                  res.c, res.residual, res.iterations, to_string(res.method),
                  res.converged);
      if (!res.converged) std::fprintf(stderr, "diagnostic: %s\n", res.diagnostic.c_str());
      return res.converged ? kExitOk : kExitDiagnostic;
    }

    if (*cmd_cont) {
      const DomainSpec spec = io::read_domain_spec(domain_path);
      const ScalarField field = parse_field(field_spec);
      json config{{"command", "continuum"}, {"domain", domain_path},
                  {"field", field_spec}, {"eps", eps}, {"tol", tol}};
      log_config(config);
      const DomainSolution sol = solve_on_domain(spec, field, eps, tol);
      if (!out_path.empty())
        io::write_solve_json(sol.result, resolve_out(out_path), config.dump());
      if (!plot_path.empty() && sol.graph.cloud().dim() == 1) {
        io::write_xy_csv(sol.graph.cloud().coords(), sol.result.u, resolve_out(plot_path));
      }
      const auto lip = check_lipschitz(sol);
      std::printf("advantage=%.17g residual=%.3g lipschitz_ok=%d oscillation_ok=%d\n",
                  sol.advantage, sol.result.residual, lip.pairs_passed,
                  lip.oscillation_passed);
      return sol.result.converged ? kExitOk : kExitDiagnostic;
    }

    if (*cmd_ladder) {
      const DomainSpec spec = io::read_domain_spec(domain_path);
      const ScalarField field = parse_field(field_spec);
      json config{{"command", "ladder"}, {"domain", domain_path}, {"field", field_spec},
                  {"base_eps", base_eps}, {"depth", depth}, {"schedule", schedule}};
      log_config(config);
      const auto ladder = advantage_ladder(
          spec, field, base_eps, depth,
          schedule == "halving" ? LadderSchedule::halving : LadderSchedule::thirding);
      if (!out_path.empty()) io::write_ladder_csv(ladder, resolve_out(out_path));
      std::printf("estimate=%.17g uncertainty=%.6g certificate=%.6g rungs=%zu\n",
                  ladder.estimate(), ladder.uncertainty(), ladder.certificate,
                  ladder.rungs.size());
      return kExitOk;
    }

    if (*cmd_sim) {
      auto in = load_graph_input(graph_path, cloud_path, f_text, f_path, u0_text);
      if (hitting_target >= 0) {
        json config{{"command", "simulate"}, {"mode", "hitting"}, {"graph", graph_path}, {"cloud", cloud_path},
                    {"target", hitting_target}, {"opponent", opponent},
                    {"trials", trials}, {"seed", seed}};
        log_config(config);
        const Strategy opp = parse_strategy(opponent.empty() ? "uniform" : opponent,
                                            nullptr, 0);
        const auto rep = hitting_time_experiment(in.graph, hitting_target, opp,
                                                 trials, seed);
        if (!out_path.empty())
          io::write_hitting_report_json(rep, resolve_out(out_path), config.dump());
        std::printf("mean_T=%.6g stderr=%.6g cap_hits=%ld\n", rep.mean_time,
                    rep.std_error, rep.cap_hits);
        return kExitOk;
      }
      json config{{"command", "simulate"}, {"mode", "play"}, {"graph", graph_path}, {"cloud", cloud_path},
                  {"horizon", horizon}, {"start", start}, {"s1", s1}, {"s2", s2},
                  {"trials", trials}, {"seed", seed}};
      log_config(config);
      IterationTrace trace;
      if (s1 == "greedy" || s2 == "greedy") {
        trace = iterate(in.graph, in.f, in.u0, horizon, {.keep_iterates = true});
      }
      const Strategy strat1 = parse_strategy(s1, &trace, horizon);
      const Strategy strat2 = parse_strategy(s2, &trace, horizon);
      PlayOptions opts;
      if (!transcripts_path.empty()) opts.keep_transcripts = static_cast<int>(std::min<long>(trials, 100));
      const auto rep = play(in.graph, in.f, in.u0, horizon, start, strat1, strat2,
                            trials, seed, opts);
      if (!out_path.empty())
        io::write_play_report_json(rep, resolve_out(out_path), config.dump());
      if (!transcripts_path.empty())
        io::write_transcripts_csv(rep.transcripts, resolve_out(transcripts_path));
      std::printf("mean=%.10g stderr=%.6g trials=%ld\n", rep.mean_payoff,
                  rep.std_error, rep.trials);
      return kExitOk;
    }

    if (*cmd_examples) {
      json config{{"command", "examples"}, {"name", example_name}};
      log_config(config);
      const auto rows = run_examples_suite(example_name);
      bool all_pass = true;
      std::printf("%-36s %14s %14s %12s  %s\n", "example", "expected", "computed",
                  "tolerance", "verdict");
      for (const auto& row : rows) {
        all_pass = all_pass && row.pass;
        std::printf("%-36s %14.8g %14.8g %12.4g  %s\n", row.name.c_str(),
                    row.expected, row.computed, row.tolerance,
                    row.pass ? "PASS" : "FAIL");
      }
      return all_pass ? kExitOk : kExitDiagnostic;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  }
  return kExitInputError;
}
