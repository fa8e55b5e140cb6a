#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "tow/examples.hpp"
#include "tow/graph.hpp"
#include "tow/rng.hpp"

namespace tow::testsupport {

// Random connected graph: a random tree plus extra edges.
inline Graph random_graph(SplitMix64& rng, int max_vertices, bool with_loops) {
  const int n = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(max_vertices - 1)));
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    edges.emplace_back(v, static_cast<int>(rng.below(static_cast<uint64_t>(v))));
  }
  const int extra = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
  for (int e = 0; e < extra; ++e) {
    const int a = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    const int b = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    if (a != b) edges.emplace_back(a, b);
  }
  return Graph::finite(n, edges, with_loops);
}

inline VertexFunction random_function(SplitMix64& rng, int n, double scale) {
  std::vector<double> v(static_cast<size_t>(n));
  for (auto& x : v) x = scale * (2.0 * rng.uniform01() - 1.0);
  return VertexFunction(std::move(v));
}

// Uniform grid on [a, b] with eps an exact multiple of the spacing, so the
// discrete midpoint property behind the step-comparison inequalities holds.
inline Graph grid_graph(double a, double b, int points, double eps) {
  std::vector<double> xs(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i)
    xs[static_cast<size_t>(i)] =
        a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
  return Graph::eps_adjacency(PointCloud(1, std::move(xs), eps));
}

// Piecewise-linear function on [0,1] with random interior knots.
struct PiecewiseLinear {
  std::vector<double> xs, ys;

  double operator()(double x) const {
    if (x <= xs.front()) return ys.front();
    for (size_t i = 1; i < xs.size(); ++i) {
      if (x <= xs[i]) {
        const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return ys[i - 1] + t * (ys[i] - ys[i - 1]);
      }
    }
    return ys.back();
  }
};

inline PiecewiseLinear random_piecewise_linear(SplitMix64& rng) {
  const int interior = 2 + static_cast<int>(rng.below(4));
  std::vector<double> xs{0.0};
  for (int i = 0; i < interior; ++i) xs.push_back(0.05 + 0.9 * rng.uniform01());
  xs.push_back(1.0);
  std::sort(xs.begin(), xs.end());
  for (size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] - xs[i - 1] < 1e-3) xs[i] = xs[i - 1] + 1e-3;
  }
  std::vector<double> ys;
  for (size_t i = 0; i < xs.size(); ++i) ys.push_back(2.0 * rng.uniform01() - 1.0);
  return PiecewiseLinear{std::move(xs), std::move(ys)};
}

}  // namespace tow::testsupport
