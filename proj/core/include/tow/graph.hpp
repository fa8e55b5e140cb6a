#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tow {

// Finite sample of a metric domain, with the Euclidean metric and a ball
// radius epsilon. Points are pairwise distinct.
class PointCloud {
 public:
  PointCloud(int dim, std::vector<double> coords, double epsilon);

  int size() const { return static_cast<int>(coords_.size()) / dim_; }
  int dim() const { return dim_; }
  double epsilon() const { return epsilon_; }

  std::span<const double> point(int i) const {
    return {coords_.data() + static_cast<size_t>(i) * dim_,
            static_cast<size_t>(dim_)};
  }
  double coord(int i, int k) const {
    return coords_[static_cast<size_t>(i) * dim_ + k];
  }

  double distance(int i, int j) const;
  double max_pairwise_distance() const;

  const std::vector<double>& coords() const { return coords_; }
  PointCloud with_epsilon(double epsilon) const {
    return PointCloud(dim_, coords_, epsilon);
  }

  // Closed-ball membership d(center, candidate) <= radius, with a relative
  // slack of 1e-9 so that grid points landing exactly on the sphere are not
  // lost to rounding in the coordinate arithmetic.
  bool in_ball(int center, int candidate, double radius) const {
    return distance(center, candidate) <= radius * (1.0 + kBallSlack);
  }

  static constexpr double kBallSlack = 1e-9;

 private:
  int dim_;
  std::vector<double> coords_;  // row-major, size() * dim()
  double epsilon_;
};

enum class GraphKind { finite_plain, finite_with_loops, eps_adjacency };

// Connected undirected graph with sorted neighbor lists. Vertices may be
// self-adjacent (loops); eps-adjacency graphs always are, because metric
// balls are closed.
class Graph {
 public:
  // Builds a finite graph on vertices 0..vertex_count-1. Rejects edges out of
  // range and disconnected results (naming the unreachable vertices).
  static Graph finite(int vertex_count,
                      const std::vector<std::pair<int, int>>& edges,
                      bool add_loops);

  // Adjacency by closed metric balls: x ~ y iff d(x,y) <= epsilon. Rejects a
  // disconnected cloud naming two mutually unreachable points.
  static Graph eps_adjacency(PointCloud cloud);

  int vertex_count() const { return static_cast<int>(offsets_.size()) - 1; }
  std::span<const int> neighbors(int x) const {
    return {adj_.data() + offsets_[static_cast<size_t>(x)],
            static_cast<size_t>(offsets_[static_cast<size_t>(x) + 1] -
                                offsets_[static_cast<size_t>(x)])};
  }
  bool adjacent(int x, int y) const;
  bool has_loop(int x) const { return adjacent(x, x); }

  GraphKind kind() const { return kind_; }
  bool is_metric() const { return kind_ == GraphKind::eps_adjacency; }

  // Hop-metric diameter, computed by BFS from every source at construction.
  int graph_diameter() const { return graph_diameter_; }
  // Max pairwise metric distance; only defined for eps-adjacency graphs.
  double metric_diameter() const;
  const PointCloud& cloud() const;

  std::vector<int> bfs_distances(int source) const;

 private:
  Graph() = default;
  void finalize(GraphKind kind);  // sort, validate, compute diameter

  std::vector<size_t> offsets_;
  std::vector<int> adj_;
  GraphKind kind_ = GraphKind::finite_plain;
  int graph_diameter_ = 0;
  std::optional<PointCloud> cloud_;
  double metric_diameter_ = 0.0;
};

}  // namespace tow
