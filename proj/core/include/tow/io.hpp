#pragma once

#include <string>
#include <vector>

#include "tow/continuum.hpp"
#include "tow/function.hpp"
#include "tow/game.hpp"
#include "tow/graph.hpp"
#include "tow/solver.hpp"
#include "tow/value.hpp"

namespace tow::io {

inline constexpr int kSchemaVersion = 1;

// Plain-text edge list with a `vertices N loops {0|1}` header line.
Graph read_graph(const std::string& path);
void write_graph(const Graph& g, const std::string& path);

// Coordinate rows, one point per line, preceded by an `epsilon,<value>`
// header line.
PointCloud read_point_cloud(const std::string& path);
void write_point_cloud(const PointCloud& cloud, const std::string& path);

// `vertex_index,value` rows; order of rows is free, every vertex once.
VertexFunction read_vertex_function(const std::string& path, int vertex_count);
void write_vertex_function(const VertexFunction& f, const std::string& path);

void write_trace_csv(const IterationTrace& trace, const std::string& path);
void write_bracket_json(const AdvantageBracket& b, const std::string& path,
                        const std::string& config_json = "");
void write_solve_json(const SolveResult& r, const std::string& path,
                      const std::string& config_json = "");
void write_ladder_csv(const AdvantageLadder& ladder, const std::string& path);
void write_play_report_json(const PlayReport& r, const std::string& path,
                            const std::string& config_json = "");
void write_hitting_report_json(const HittingReport& r, const std::string& path,
                               const std::string& config_json = "");
void write_transcripts_csv(const std::vector<GameTranscript>& ts,
                           const std::string& path);
// Plot-ready (x, u(x)) rows for 1-d solutions.
void write_xy_csv(const std::vector<double>& xs, const VertexFunction& u,
                  const std::string& path);

DomainSpec read_domain_spec(const std::string& path);
void write_domain_spec(const DomainSpec& spec, const std::string& path);

// Comma-separated literal, e.g. "-1,2,-1".
VertexFunction parse_inline_values(const std::string& text);

}  // namespace tow::io
