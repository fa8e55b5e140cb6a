#include "tow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace tow {

PointCloud::PointCloud(int dim, std::vector<double> coords, double epsilon)
    : dim_(dim), coords_(std::move(coords)), epsilon_(epsilon) {
  if (dim_ <= 0) throw std::invalid_argument("point dimension must be positive");
  if (epsilon_ <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (coords_.empty() || coords_.size() % static_cast<size_t>(dim_) != 0) {
    throw std::invalid_argument("coordinate array size is not a multiple of dim");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
  }
  const int n = size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (distance(i, j) == 0.0) {
        throw std::invalid_argument("points " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
      }
    }
  }
}

double PointCloud::distance(int i, int j) const {
  double s = 0.0;
  for (int k = 0; k < dim_; ++k) {
    const double d = coord(i, k) - coord(j, k);
    s += d * d;
  }
  return std::sqrt(s);
}

double PointCloud::max_pairwise_distance() const {
  const int n = size();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m = std::max(m, distance(i, j));
  return m;
}

namespace {

std::string format_point(const PointCloud& cloud, int i) {
  std::ostringstream os;
  os << "(";
  for (int k = 0; k < cloud.dim(); ++k) {
    if (k) os << ", ";
    os << cloud.coord(i, k);
  }
  os << ")";
  return os.str();
}

}  // namespace

Graph Graph::finite(int vertex_count,
                    const std::vector<std::pair<int, int>>& edges,
                    bool add_loops) {
  if (vertex_count <= 0) throw std::invalid_argument("vertex_count must be positive");
  std::vector<std::vector<int>> lists(static_cast<size_t>(vertex_count));
  auto check = [&](int v) {
    if (v < 0 || v >= vertex_count) {
      throw std::invalid_argument("edge endpoint " + std::to_string(v) +
                                  " out of range [0, " +
                                  std::to_string(vertex_count) + ")");
    }
  };
  for (auto [u, v] : edges) {
    check(u);
    check(v);
    lists[static_cast<size_t>(u)].push_back(v);
    if (u != v) lists[static_cast<size_t>(v)].push_back(u);
  }
  if (add_loops) {
    for (int v = 0; v < vertex_count; ++v) lists[static_cast<size_t>(v)].push_back(v);
  }

  Graph g;
  g.offsets_.assign(1, 0);
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    g.adj_.insert(g.adj_.end(), l.begin(), l.end());
    g.offsets_.push_back(g.adj_.size());
  }
  g.finalize(add_loops ? GraphKind::finite_with_loops : GraphKind::finite_plain);
  return g;
}

Graph Graph::eps_adjacency(PointCloud cloud) {
  const int n = cloud.size();
  const double eps = cloud.epsilon();
  Graph g;
  g.offsets_.assign(1, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (cloud.in_ball(i, j, eps)) g.adj_.push_back(j);
    }
    g.offsets_.push_back(g.adj_.size());
  }
  g.metric_diameter_ = cloud.max_pairwise_distance();
  g.cloud_ = std::move(cloud);
  g.finalize(GraphKind::eps_adjacency);
  return g;
}

bool Graph::adjacent(int x, int y) const {
  auto nb = neighbors(x);
  return std::binary_search(nb.begin(), nb.end(), y);
}

std::vector<int> Graph::bfs_distances(int source) const {
  std::vector<int> dist(static_cast<size_t>(vertex_count()), -1);
  std::queue<int> q;
  dist[static_cast<size_t>(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : neighbors(x)) {
      if (dist[static_cast<size_t>(y)] < 0) {
        dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

void Graph::finalize(GraphKind kind) {
  kind_ = kind;
  const int n = vertex_count();
  for (int x = 0; x < n; ++x) {
    if (neighbors(x).empty()) {
      throw std::invalid_argument("vertex " + std::to_string(x) +
                                  " has no neighbors");
    }
  }
  if (kind_ == GraphKind::finite_with_loops) {
    for (int x = 0; x < n; ++x) {
      if (!has_loop(x))
        throw std::invalid_argument("loop missing at vertex " + std::to_string(x));
    }
  }

  const auto dist0 = bfs_distances(0);
  std::vector<int> unreachable;
  for (int x = 0; x < n; ++x) {
    if (dist0[static_cast<size_t>(x)] < 0) unreachable.push_back(x);
  }
  if (!unreachable.empty()) {
    std::ostringstream os;
    if (kind_ == GraphKind::eps_adjacency) {
      os << "epsilon " << cloud_->epsilon() << " too small for connectivity: point "
         << format_point(*cloud_, unreachable.front()) << " is unreachable from "
         << format_point(*cloud_, 0);
    } else {
      os << "disconnected graph: vertices {";
      const size_t shown = std::min<size_t>(unreachable.size(), 16);
      for (size_t i = 0; i < shown; ++i) {
        if (i) os << ", ";
        os << unreachable[i];
      }
      if (unreachable.size() > shown) os << ", ...";
      os << "} unreachable from vertex 0";
    }
    throw std::invalid_argument(os.str());
  }

  int diam = 0;
  for (int s = 0; s < n; ++s) {
    const auto d = bfs_distances(s);
    diam = std::max(diam, *std::max_element(d.begin(), d.end()));
  }
  graph_diameter_ = diam;
}

double Graph::metric_diameter() const {
  if (!is_metric())
    throw std::invalid_argument("metric diameter requires an eps-adjacency graph");
  return metric_diameter_;
}

const PointCloud& Graph::cloud() const {
  if (!cloud_)
    throw std::invalid_argument("graph carries no point cloud");
  return *cloud_;
}

}  // namespace tow
