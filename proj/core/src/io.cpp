#include "tow/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tow::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& path, int line) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) fail(path, line, "trailing junk in number '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    fail(path, line, "expected a number, got '" + s + "'");
  } catch (const std::out_of_range&) {
    fail(path, line, "number out of range: '" + s + "'");
  }
}

bool skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Graph read_graph(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  int lineno = 0;
  int vertices = -1, loops = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    if (vertices < 0) {
      std::string kw1, kw2;
      if (!(ls >> kw1 >> vertices >> kw2 >> loops) || kw1 != "vertices" ||
          kw2 != "loops" || (loops != 0 && loops != 1) || vertices <= 0) {
        fail(path, lineno, "expected header 'vertices N loops {0|1}'");
      }
      continue;
    }
    int u, v;
    if (!(ls >> u >> v)) fail(path, lineno, "expected edge 'u v'");
    std::string rest;
    if (ls >> rest) fail(path, lineno, "trailing junk after edge");
    edges.emplace_back(u, v);
  }
  if (vertices < 0) fail(path, lineno, "missing header line");
  try {
    return Graph::finite(vertices, edges, loops == 1);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_graph(const Graph& g, const std::string& path) {
  auto out = open_out(path);
  const bool loops = g.kind() == GraphKind::finite_with_loops;
  out << "vertices " << g.vertex_count() << " loops " << (loops ? 1 : 0) << "\n";
  for (int x = 0; x < g.vertex_count(); ++x) {
    for (int y : g.neighbors(x)) {
      if (y > x || (y == x && !loops)) out << x << " " << y << "\n";
    }
  }
}

PointCloud read_point_cloud(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  int lineno = 0;
  double epsilon = -1.0;
  int dim = -1;
  std::vector<double> coords;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto cells = split(line, ',');
    if (epsilon < 0.0) {
      if (cells.size() != 2 || cells[0] != "epsilon")
        fail(path, lineno, "expected header 'epsilon,<value>'");
      epsilon = parse_double(cells[1], path, lineno);
      continue;
    }
    if (dim < 0) dim = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != dim)
      fail(path, lineno, "inconsistent coordinate count");
    for (const auto& c : cells) coords.push_back(parse_double(c, path, lineno));
  }
  if (epsilon < 0.0) fail(path, lineno, "missing 'epsilon,<value>' header");
  if (coords.empty()) fail(path, lineno, "no points");
  try {
    return PointCloud(dim, std::move(coords), epsilon);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_point_cloud(const PointCloud& cloud, const std::string& path) {
  auto out = open_out(path);
  out << "epsilon," << fmt(cloud.epsilon()) << "\n";
  for (int i = 0; i < cloud.size(); ++i) {
    for (int k = 0; k < cloud.dim(); ++k) {
      if (k) out << ",";
      out << fmt(cloud.coord(i, k));
    }
    out << "\n";
  }
}

VertexFunction read_vertex_function(const std::string& path, int vertex_count) {
  auto in = open_in(path);
  std::string line;
  int lineno = 0;
  std::vector<double> vals(static_cast<size_t>(vertex_count));
  std::vector<bool> seen(static_cast<size_t>(vertex_count), false);
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) fail(path, lineno, "expected 'vertex_index,value'");
    if (cells[0] == "vertex_index") continue;  // optional header row
    const double idx_raw = parse_double(cells[0], path, lineno);
    const int idx = static_cast<int>(idx_raw);
    if (idx < 0 || idx >= vertex_count || idx != idx_raw)
      fail(path, lineno, "vertex index out of range: " + cells[0]);
    if (seen[static_cast<size_t>(idx)]) fail(path, lineno, "duplicate vertex index");
    seen[static_cast<size_t>(idx)] = true;
    vals[static_cast<size_t>(idx)] = parse_double(cells[1], path, lineno);
  }
  for (int i = 0; i < vertex_count; ++i) {
    if (!seen[static_cast<size_t>(i)])
      throw std::runtime_error(path + ": no value for vertex " + std::to_string(i));
  }
  return VertexFunction(std::move(vals));
}

void write_vertex_function(const VertexFunction& f, const std::string& path) {
  auto out = open_out(path);
  out << "vertex_index,value\n";
  for (int i = 0; i < f.size(); ++i) out << i << "," << fmt(f[i]) << "\n";
}

void write_trace_csv(const IterationTrace& trace, const std::string& path) {
  auto out = open_out(path);
  out << "# schema-version: " << kSchemaVersion << "\n";
  out << "n,max_u,min_u,M_n,m_n\n";
  for (int k = 0; k <= trace.n; ++k) {
    out << k << "," << fmt(trace.max_u_history[static_cast<size_t>(k)]) << ","
        << fmt(trace.min_u_history[static_cast<size_t>(k)]);
    if (k >= 1) {
      out << "," << fmt(trace.max_increment_history[static_cast<size_t>(k - 1)])
          << "," << fmt(trace.min_increment_history[static_cast<size_t>(k - 1)]);
    } else {
      out << ",,";
    }
    out << "\n";
  }
}

namespace {

json base_artifact(const std::string& config_json) {
  json j;
  j["schema_version"] = kSchemaVersion;
  if (!config_json.empty()) j["config"] = json::parse(config_json);
  return j;
}

}  // namespace

void write_bracket_json(const AdvantageBracket& b, const std::string& path,
                        const std::string& config_json) {
  json j = base_artifact(config_json);
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["n"] = b.n;
  j["tol_met"] = b.tol_met;
  open_out(path) << j.dump(2) << "\n";
}

void write_solve_json(const SolveResult& r, const std::string& path,
                      const std::string& config_json) {
  json j = base_artifact(config_json);
  j["c"] = r.c;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["method"] = to_string(r.method);
  if (r.rate_alpha)
    j["rate_alpha"] = *r.rate_alpha;
  else
    j["rate_alpha"] = nullptr;
  j["converged"] = r.converged;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  j["u"] = r.u.values();
  open_out(path) << j.dump(2) << "\n";
}

void write_ladder_csv(const AdvantageLadder& ladder, const std::string& path) {
  auto out = open_out(path);
  out << "# schema-version: " << kSchemaVersion << "\n";
  out << "eps,cf_lower,cf_upper,certificate\n";
  for (const auto& rung : ladder.rungs) {
    out << fmt(rung.eps) << "," << fmt(rung.bracket.lower) << ","
        << fmt(rung.bracket.upper) << "," << fmt(ladder.certificate) << "\n";
  }
}

void write_play_report_json(const PlayReport& r, const std::string& path,
                            const std::string& config_json) {
  json j = base_artifact(config_json);
  j["mean"] = r.mean_payoff;
  j["stderr"] = r.std_error;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  open_out(path) << j.dump(2) << "\n";
}

void write_hitting_report_json(const HittingReport& r, const std::string& path,
                               const std::string& config_json) {
  json j = base_artifact(config_json);
  j["mean"] = r.mean_time;
  j["stderr"] = r.std_error;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["cap_hits"] = r.cap_hits;
  j["step_cap"] = r.step_cap;
  open_out(path) << j.dump(2) << "\n";
}

void write_transcripts_csv(const std::vector<GameTranscript>& ts,
                           const std::string& path) {
  auto out = open_out(path);
  out << "# schema-version: " << kSchemaVersion << "\n";
  out << "trial,step,position,flip\n";
  for (const auto& t : ts) {
    for (size_t s = 0; s < t.positions.size(); ++s) {
      out << t.trial << "," << s << "," << t.positions[s] << ",";
      if (s < t.coin_flips.size())
        out << static_cast<int>(t.coin_flips[s]);
      out << "\n";
    }
  }
}

void write_xy_csv(const std::vector<double>& xs, const VertexFunction& u,
                  const std::string& path) {
  if (static_cast<int>(xs.size()) != u.size())
    throw std::invalid_argument("x/u size mismatch");
  auto out = open_out(path);
  out << "# schema-version: " << kSchemaVersion << "\n";
  out << "x,u\n";
  for (int i = 0; i < u.size(); ++i) out << fmt(xs[static_cast<size_t>(i)]) << "," << fmt(u[i]) << "\n";
}

DomainSpec read_domain_spec(const std::string& path) {
  json j;
  try {
    j = json::parse(open_in(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  DomainSpec spec;
  const std::string shape = j.at("shape").get<std::string>();
  const auto& params = j.at("params");
  if (shape == "interval") {
    spec.shape = Interval{params.at("a").get<double>(), params.at("b").get<double>()};
  } else if (shape == "disc") {
    spec.shape = Disc{params.at("r").get<double>()};
  } else if (shape == "convex-polygon") {
    ConvexPolygon poly;
    for (const auto& v : params.at("vertices")) {
      poly.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    }
    spec.shape = poly;
  } else {
    throw std::runtime_error(path + ": unknown shape '" + shape + "'");
  }
  spec.mesh = j.at("mesh").get<double>();
  const auto& sampler = j.at("sampler");
  const std::string kind = sampler.at("kind").get<std::string>();
  if (kind == "uniform-grid") {
    spec.sampler = UniformGridSampler{};
  } else if (kind == "polar-spokes") {
    spec.sampler = PolarSpokesSampler{sampler.at("n_rays").get<int>(),
                                      sampler.at("n_radii").get<int>()};
  } else {
    throw std::runtime_error(path + ": unknown sampler '" + kind + "'");
  }
  return spec;
}

void write_domain_spec(const DomainSpec& spec, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  if (const auto* iv = std::get_if<Interval>(&spec.shape)) {
    j["shape"] = "interval";
    j["params"] = {{"a", iv->a}, {"b", iv->b}};
  } else if (const auto* d = std::get_if<Disc>(&spec.shape)) {
    j["shape"] = "disc";
    j["params"] = {{"r", d->radius}};
  } else {
    const auto& poly = std::get<ConvexPolygon>(spec.shape);
    j["shape"] = "convex-polygon";
    json vs = json::array();
    for (const auto& v : poly.vertices) vs.push_back({v[0], v[1]});
    j["params"] = {{"vertices", vs}};
  }
  j["mesh"] = spec.mesh;
  if (std::holds_alternative<UniformGridSampler>(spec.sampler)) {
    j["sampler"] = {{"kind", "uniform-grid"}};
  } else {
    const auto& p = std::get<PolarSpokesSampler>(spec.sampler);
    j["sampler"] = {{"kind", "polar-spokes"}, {"n_rays", p.n_rays}, {"n_radii", p.n_radii}};
  }
  open_out(path) << j.dump(2) << "\n";
}

VertexFunction parse_inline_values(const std::string& text) {
  const auto cells = split(text, ',');
  std::vector<double> vals;
  vals.reserve(cells.size());
  for (const auto& c : cells) vals.push_back(parse_double(c, "<inline>", 1));
  return VertexFunction(std::move(vals));
}

}  // namespace tow::io
