#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "tow/examples.hpp"
#include "tow/io.hpp"

#include "support/helpers.hpp"

using namespace tow;
using namespace tow::testsupport;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("tow_io_" + std::to_string(SplitMix64::mix(
                           static_cast<uint64_t>(::getpid()))));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("graph files round-trip") {
  TempDir tmp;
  SplitMix64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const Graph g = random_graph(rng, 10, rng.coin());
    const std::string path = tmp / "g.txt";
    io::write_graph(g, path);
    const Graph h = io::read_graph(path);
    REQUIRE(h.vertex_count() == g.vertex_count());
    CHECK(h.kind() == g.kind());
    for (int x = 0; x < g.vertex_count(); ++x) {
      const auto a = g.neighbors(x);
      const auto b = h.neighbors(x);
      REQUIRE(a.size() == b.size());
      for (size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
    }
  }
}

TEST_CASE("graph parse errors carry the line number") {
  TempDir tmp;
  const std::string path = tmp / "bad.txt";
  write_text(path, "vertices x loops 1\n");
  CHECK_THROWS_WITH_AS(io::read_graph(path), doctest::Contains(":1:"),
                       std::runtime_error);
  write_text(path, "vertices 3 loops 1\n0 1\n1 2 9\n");
  CHECK_THROWS_WITH_AS(io::read_graph(path), doctest::Contains(":3:"),
                       std::runtime_error);
  write_text(path, "vertices 3 loops 1\n0 1\n");
  CHECK_THROWS_WITH_AS(io::read_graph(path), doctest::Contains("unreachable"),
                       std::runtime_error);
}

TEST_CASE("point cloud files round-trip and validate the epsilon header") {
  TempDir tmp;
  const std::string path = tmp / "cloud.csv";
  io::write_point_cloud(PointCloud(1, {0.0, 0.5, 1.0}, 0.5), path);
  const PointCloud cloud = io::read_point_cloud(path);
  CHECK(cloud.size() == 3);
  CHECK(cloud.epsilon() == 0.5);
  CHECK(cloud.coord(1, 0) == 0.5);

  write_text(path, "0.0\n1.0\n");
  CHECK_THROWS_WITH_AS(io::read_point_cloud(path), doctest::Contains("epsilon"),
                       std::runtime_error);
}

TEST_CASE("vertex functions round-trip and reject gaps") {
  TempDir tmp;
  const std::string path = tmp / "f.csv";
  const VertexFunction f({-1.0, 2.0, -1.0});
  io::write_vertex_function(f, path);
  CHECK(sup_distance(io::read_vertex_function(path, 3), f) == 0.0);

  write_text(path, "0,-1\n2,-1\n");
  CHECK_THROWS_WITH_AS(io::read_vertex_function(path, 3),
                       doctest::Contains("no value for vertex 1"),
                       std::runtime_error);
  write_text(path, "0,-1\n0,2\n1,0\n2,0\n");
  CHECK_THROWS_WITH_AS(io::read_vertex_function(path, 3),
                       doctest::Contains("duplicate"), std::runtime_error);
}

TEST_CASE("trace CSV has a schema line, a header and one row per step") {
  TempDir tmp;
  const Graph g = fixtures::path_with_loops(3);
  const auto trace = iterate(g, VertexFunction({-1.0, 2.0, -1.0}),
                             VertexFunction::zeros(3), 5);
  const std::string path = tmp / "trace.csv";
  io::write_trace_csv(trace, path);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 2 + 6);  // schema + header + n+1 rows
}

TEST_CASE("bracket and solve artifacts are valid JSON with a schema version") {
  TempDir tmp;
  const Graph g = fixtures::path_with_loops(3);
  const auto b = advantage_bracket(g, VertexFunction({-1.0, 2.0, -1.0}), 100);
  const std::string bpath = tmp / "bracket.json";
  io::write_bracket_json(b, bpath, R"({"command":"cf"})");
  const auto bj = nlohmann::json::parse(std::ifstream(bpath));
  CHECK(bj.at("schema_version") == io::kSchemaVersion);
  CHECK(bj.at("lower").get<double>() == b.lower);
  CHECK(bj.at("config").at("command") == "cf");

  const auto res = solve_fixed_point(g, VertexFunction({-1.0, 2.0, -1.0}));
  const std::string spath = tmp / "solve.json";
  io::write_solve_json(res, spath);
  const auto sj = nlohmann::json::parse(std::ifstream(spath));
  CHECK(sj.at("schema_version") == io::kSchemaVersion);
  CHECK(sj.at("c").get<double>() == res.c);
  CHECK(sj.at("u").size() == 3);
  CHECK(sj.at("method") == "fixed-point");
}

TEST_CASE("ladder CSV lists one rung per row") {
  TempDir tmp;
  const auto ladder = advantage_ladder(
      fixtures::unit_interval_grid(101),
      [](std::span<const double> p) { return p[0]; }, 0.2, 2,
      LadderSchedule::halving, 50'000, 1e-2);
  const std::string path = tmp / "ladder.csv";
  io::write_ladder_csv(ladder, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line.find("schema-version") != std::string::npos);
  std::getline(in, line);
  CHECK(line == "eps,cf_lower,cf_upper,certificate");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("domain specs round-trip through JSON") {
  TempDir tmp;
  DomainSpec spec;
  spec.shape = Disc{2.0};
  spec.mesh = 0.05;
  spec.sampler = PolarSpokesSampler{32, 21};
  const std::string path = tmp / "dom.json";
  io::write_domain_spec(spec, path);
  const DomainSpec back = io::read_domain_spec(path);
  CHECK(std::get<Disc>(back.shape).radius == 2.0);
  CHECK(back.mesh == 0.05);
  CHECK(std::get<PolarSpokesSampler>(back.sampler).n_rays == 32);

  write_text(path, R"({"shape":"blob","params":{},"mesh":0.1,"sampler":{"kind":"uniform-grid"}})");
  CHECK_THROWS_WITH_AS(io::read_domain_spec(path), doctest::Contains("unknown shape"),
                       std::runtime_error);
}

TEST_CASE("inline value lists parse strictly") {
  const VertexFunction f = io::parse_inline_values("-1,2,-1");
  CHECK(f.size() == 3);
  CHECK(f[0] == -1.0);
  CHECK(f[1] == 2.0);
  CHECK_THROWS_AS(io::parse_inline_values("1,two,3"), std::runtime_error);
  CHECK_THROWS_AS(io::parse_inline_values("1,,3"), std::runtime_error);
}
