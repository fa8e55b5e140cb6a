#include "tow/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tow {

const char* to_string(LadderSchedule s) {
  return s == LadderSchedule::halving ? "halving" : "thirding";
}

const char* to_string(SignCertificate c) {
  switch (c) {
    case SignCertificate::lower_bound: return "lower_bound_certified";
    case SignCertificate::upper_bound: return "upper_bound_certified";
    case SignCertificate::both: return "both_certified";
    case SignCertificate::none: return "none";
  }
  return "?";
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> xs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    xs[static_cast<size_t>(i)] = a + (b - a) * static_cast<double>(i) /
                                         static_cast<double>(n - 1);
  xs.front() = a;
  xs.back() = b;
  return xs;
}

SampledDomain sample_interval(const Interval& iv, double pitch, double epsilon) {
  if (!(iv.b > iv.a)) throw std::invalid_argument("interval needs a < b");
  const int n = std::max(2, static_cast<int>(std::ceil((iv.b - iv.a) / pitch)) + 1);
  const auto xs = linspace(iv.a, iv.b, n);
  const double spacing = (iv.b - iv.a) / static_cast<double>(n - 1);
  return SampledDomain{PointCloud(1, xs, epsilon), 0.5 * spacing};
}

SampledDomain sample_disc_polar(const Disc& disc, const PolarSpokesSampler& s,
                                double epsilon) {
  if (disc.radius <= 0.0) throw std::invalid_argument("disc radius must be positive");
  if (s.n_rays < 2 || s.n_radii < 2)
    throw std::invalid_argument("polar sampler needs at least 2 rays and 2 radii");
  const auto radii = linspace(0.0, disc.radius, s.n_radii);
  std::vector<double> coords;
  coords.reserve(static_cast<size_t>(s.n_rays) * s.n_radii * 2);
  for (int j = 0; j < s.n_rays; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / s.n_rays;
    for (int i = 0; i < s.n_radii; ++i) {
      if (radii[static_cast<size_t>(i)] == 0.0 && j > 0) continue;  // center once
      coords.push_back(radii[static_cast<size_t>(i)] * std::cos(theta));
      coords.push_back(radii[static_cast<size_t>(i)] * std::sin(theta));
    }
  }
  const double hr = disc.radius / static_cast<double>(s.n_radii - 1);
  const double angular = 2.0 * disc.radius * std::sin(std::numbers::pi / (2.0 * s.n_rays));
  return SampledDomain{PointCloud(2, std::move(coords), epsilon), 0.5 * hr + angular};
}

SampledDomain sample_disc_grid(const Disc& disc, double pitch, double epsilon) {
  if (disc.radius <= 0.0) throw std::invalid_argument("disc radius must be positive");
  std::vector<double> coords;
  const int k = static_cast<int>(std::ceil(disc.radius / pitch));
  for (int i = -k; i <= k; ++i) {
    for (int j = -k; j <= k; ++j) {
      const double x = i * pitch, y = j * pitch;
      if (std::hypot(x, y) <= disc.radius) {
        coords.push_back(x);
        coords.push_back(y);
      }
    }
  }
  // boundary ring so the rim is covered at pitch resolution; skip ring points
  // that coincide with lattice points on the axes
  const int m = std::max(8, static_cast<int>(std::ceil(
                                2.0 * std::numbers::pi * disc.radius / pitch)));
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / m;
    const double x = disc.radius * std::cos(theta);
    const double y = disc.radius * std::sin(theta);
    bool dup = false;
    for (size_t i = 0; i + 1 < coords.size(); i += 2) {
      if (std::hypot(x - coords[i], y - coords[i + 1]) < 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      coords.push_back(x);
      coords.push_back(y);
    }
  }
  return SampledDomain{PointCloud(2, std::move(coords), epsilon), 1.25 * pitch};
}

void require_convex(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  int sign = 0;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = v[static_cast<size_t>(i)];
    const auto& b = v[static_cast<size_t>((i + 1) % n)];
    const auto& c = v[static_cast<size_t>((i + 2) % n)];
    const double cross =
        (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
    if (cross == 0.0) continue;
    const int s = cross > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) throw std::invalid_argument("polygon is not convex");
  }
  if (sign == 0) throw std::invalid_argument("polygon is degenerate");
}

bool polygon_contains(const ConvexPolygon& poly, double x, double y) {
  const auto& v = poly.vertices;
  const int n = static_cast<int>(v.size());
  int sign = 0;
  for (int i = 0; i < n; ++i) {
    const auto& a = v[static_cast<size_t>(i)];
    const auto& b = v[static_cast<size_t>((i + 1) % n)];
    const double cross = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
    if (std::abs(cross) <= 1e-12) continue;
    const int s = cross > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return true;
}

SampledDomain sample_polygon(const ConvexPolygon& poly, double pitch,
                             double epsilon) {
  require_convex(poly);
  double x0 = poly.vertices[0][0], x1 = x0, y0 = poly.vertices[0][1], y1 = y0;
  for (const auto& p : poly.vertices) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  std::vector<double> coords;
  for (double x = x0; x <= x1 + 1e-12; x += pitch) {
    for (double y = y0; y <= y1 + 1e-12; y += pitch) {
      if (polygon_contains(poly, x, y)) {
        coords.push_back(x);
        coords.push_back(y);
      }
    }
  }
  const int n = static_cast<int>(poly.vertices.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = poly.vertices[static_cast<size_t>(i)];
    const auto& b = poly.vertices[static_cast<size_t>((i + 1) % n)];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    const int m = std::max(1, static_cast<int>(std::ceil(len / pitch)));
    for (int j = 0; j < m; ++j) {
      const double t = static_cast<double>(j) / m;
      coords.push_back(a[0] + t * (b[0] - a[0]));
      coords.push_back(a[1] + t * (b[1] - a[1]));
    }
  }
  // dedupe grid/boundary collisions
  std::vector<double> unique;
  const int total = static_cast<int>(coords.size()) / 2;
  for (int i = 0; i < total; ++i) {
    bool dup = false;
    for (size_t j = 0; j + 1 < unique.size(); j += 2) {
      if (std::hypot(coords[2 * static_cast<size_t>(i)] - unique[j],
                     coords[2 * static_cast<size_t>(i) + 1] - unique[j + 1]) <
          1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      unique.push_back(coords[2 * static_cast<size_t>(i)]);
      unique.push_back(coords[2 * static_cast<size_t>(i) + 1]);
    }
  }
  return SampledDomain{PointCloud(2, std::move(unique), epsilon), 1.25 * pitch};
}

}  // namespace

SampledDomain sample_domain(const DomainSpec& spec, double epsilon) {
  if (spec.mesh <= 0.0) throw std::invalid_argument("mesh pitch must be positive");
  return std::visit(
      [&](const auto& shape) -> SampledDomain {
        using S = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<S, Interval>) {
          return sample_interval(shape, spec.mesh, epsilon);
        } else if constexpr (std::is_same_v<S, Disc>) {
          if (const auto* polar = std::get_if<PolarSpokesSampler>(&spec.sampler))
            return sample_disc_polar(shape, *polar, epsilon);
          return sample_disc_grid(shape, spec.mesh, epsilon);
        } else {
          return sample_polygon(shape, spec.mesh, epsilon);
        }
      },
      spec.shape);
}

VertexFunction sample_field(const PointCloud& cloud, const ScalarField& f) {
  std::vector<double> vals(static_cast<size_t>(cloud.size()));
  for (int i = 0; i < cloud.size(); ++i) vals[static_cast<size_t>(i)] = f(cloud.point(i));
  return VertexFunction(std::move(vals));
}

namespace {

void require_eps_margin(double eps, const SampledDomain& s) {
  if (eps < 2.0 * s.covering_radius) {
    throw std::invalid_argument(
        "eps " + std::to_string(eps) + " below the connectivity margin 2*mesh = " +
        std::to_string(2.0 * s.covering_radius));
  }
}

}  // namespace

AdvantageBracket eps_advantage(const DomainSpec& domain, const ScalarField& f,
                               double eps, long n_max, double tol) {
  const SampledDomain s = sample_domain(domain, eps);
  require_eps_margin(eps, s);
  const Graph g = Graph::eps_adjacency(s.cloud);
  return advantage_bracket(g, sample_field(g.cloud(), f), n_max, tol);
}

AdvantageLadder advantage_ladder(const DomainSpec& domain, const ScalarField& f,
                                 double base_eps, int depth,
                                 LadderSchedule schedule, long n_max, double tol) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  const double s = schedule == LadderSchedule::halving ? 2.0 : 3.0;
  const SampledDomain sampled = sample_domain(domain, base_eps);
  const double deepest = base_eps * std::pow(s, -depth);
  if (deepest < 2.0 * sampled.covering_radius) {
    int feasible = -1;
    for (int k = 0; k <= depth; ++k) {
      if (base_eps * std::pow(s, -k) >= 2.0 * sampled.covering_radius) feasible = k;
    }
    throw std::invalid_argument(
        "mesh too coarse for depth " + std::to_string(depth) +
        " (max feasible depth " + std::to_string(feasible) + ")");
  }

  AdvantageLadder ladder;
  ladder.base_eps = base_eps;
  ladder.schedule = schedule;
  for (int k = 0; k <= depth; ++k) {
    const double eps_k = base_eps * std::pow(s, -k);
    Graph g = Graph::eps_adjacency(sampled.cloud.with_epsilon(eps_k));
    const VertexFunction fs = sample_field(g.cloud(), f);
    ladder.rungs.push_back({eps_k, advantage_bracket(g, fs, n_max, tol)});
    if (k == 0) ladder.certificate = metric_oscillation(g, fs, 2.0 * base_eps);
    if (k == depth) ladder.deepest_osc = metric_oscillation(g, fs, 2.0 * eps_k);
  }
  return ladder;
}

DomainSolution solve_on_domain(const DomainSpec& domain, const ScalarField& f,
                               double eps, double tol, long n_max) {
  const SampledDomain s = sample_domain(domain, eps);
  require_eps_margin(eps, s);
  Graph g = Graph::eps_adjacency(s.cloud);
  VertexFunction fs = sample_field(g.cloud(), f);

  const AdvantageBracket bracket = advantage_bracket(g, fs, n_max, tol);
  const double c_mid = bracket.midpoint();
  const double scale = 0.5 * eps * eps;
  SolveResult result = solve_fixed_point(g, scale * (fs - c_mid), 0.5 * tol, n_max);
  // fold the solver's residual drift back into the advantage constant
  const double advantage = c_mid + result.c / scale;
  return DomainSolution{std::move(g), std::move(fs), bracket, advantage,
                        std::move(result), eps};
}

LipschitzReport check_lipschitz(const DomainSolution& sol) {
  const Graph& g = sol.graph;
  const PointCloud& cloud = g.cloud();
  const VertexFunction& u = sol.result.u;
  const VertexFunction shifted = sol.f_samples - sol.advantage;
  const double diam = g.metric_diameter();
  const double k_lip = 5.0 * diam * shifted.sup_norm();

  LipschitzReport rep;
  rep.lip_constant = k_lip;
  rep.osc_bound = 6.0 * diam * diam * shifted.sup_norm();
  rep.pairs_passed = true;
  const double slack = 1e-9 * (1.0 + u.sup_norm());
  for (int x = 0; x < u.size(); ++x) {
    for (int y = x + 1; y < u.size(); ++y) {
      const double excess = std::abs(u[x] - u[y]) -
                            (k_lip * cloud.distance(x, y) + k_lip * sol.eps);
      if (excess > rep.worst_excess) {
        rep.worst_excess = excess;
        rep.worst_x = x;
        rep.worst_y = y;
      }
      if (excess > slack) rep.pairs_passed = false;
    }
  }
  rep.oscillation_passed = u.oscillation() <= rep.osc_bound + slack;
  return rep;
}

RadialReport radial_reduction_check(double radius,
                                    const std::function<double(double)>& g_radial,
                                    double eps, int sweeps, int n_rays,
                                    int n_radii) {
  if (sweeps < 0) throw std::invalid_argument("sweep count must be nonnegative");
  DomainSpec disc_spec{Disc{radius}, radius / (n_radii - 1),
                       PolarSpokesSampler{n_rays, n_radii}};
  const SampledDomain disc = sample_domain(disc_spec, eps);
  const Graph g2 = Graph::eps_adjacency(disc.cloud);

  const auto radii = [&] {
    std::vector<double> rs(static_cast<size_t>(n_radii));
    for (int i = 0; i < n_radii; ++i)
      rs[static_cast<size_t>(i)] = radius * static_cast<double>(i) /
                                   static_cast<double>(n_radii - 1);
    return rs;
  }();
  const Graph g1 = Graph::eps_adjacency(PointCloud(1, radii, eps));
  if (g1.vertex_count() != n_radii)
    throw std::invalid_argument("radii sets mismatched");

  // payoff on the disc is evaluated from coordinates, not from the stored
  // radius, so the comparison sees the full discretization pipeline
  std::vector<double> f2(static_cast<size_t>(g2.vertex_count()));
  std::vector<int> radius_index(static_cast<size_t>(g2.vertex_count()));
  const double dr = radius / static_cast<double>(n_radii - 1);
  for (int i = 0; i < g2.vertex_count(); ++i) {
    const double r = std::hypot(g2.cloud().coord(i, 0), g2.cloud().coord(i, 1));
    f2[static_cast<size_t>(i)] = g_radial(r);
    radius_index[static_cast<size_t>(i)] =
        static_cast<int>(std::llround(r / dr));
  }
  std::vector<double> f1(static_cast<size_t>(n_radii));
  for (int i = 0; i < n_radii; ++i) f1[static_cast<size_t>(i)] = g_radial(radii[static_cast<size_t>(i)]);

  VertexFunction u2 = VertexFunction::zeros(g2.vertex_count());
  VertexFunction u1 = VertexFunction::zeros(n_radii);
  const VertexFunction vf2{std::vector<double>(f2)};
  const VertexFunction vf1{std::vector<double>(f1)};

  RadialReport rep;
  rep.n_rays = n_rays;
  rep.n_radii = n_radii;
  rep.sweeps = sweeps;
  double scale = 1.0;
  for (int k = 0; k < sweeps; ++k) {
    u2 = value_step(g2, vf2, u2);
    u1 = value_step(g1, vf1, u1);
    for (int i = 0; i < g2.vertex_count(); ++i) {
      rep.max_abs_difference =
          std::max(rep.max_abs_difference,
                   std::abs(u2[i] - u1[radius_index[static_cast<size_t>(i)]]));
    }
    scale = std::max({scale, u1.sup_norm(), u2.sup_norm()});
  }

  rep.chord_error = 2.0 * radius * std::sin(std::numbers::pi / n_rays);
  const double per_sweep_osc =
      rep.chord_error > 0.0
          ? metric_oscillation(g1, vf1, rep.chord_error)
          : 0.0;
  rep.tolerance = sweeps * per_sweep_osc + sweeps * 1e-12 * scale;
  return rep;
}

SignCertificate sign_certificate(const Graph& g, const VertexFunction& f,
                                 const VertexFunction& u, double eps) {
  const VertexFunction lap = eps_inf_laplacian(g, u, eps);
  const double slack = 1e-12 * (1.0 + f.sup_norm() + lap.sup_norm());
  bool sub = true, super = true;
  for (int x = 0; x < u.size(); ++x) {
    if (-lap[x] > f[x] + slack) sub = false;
    if (-lap[x] < f[x] - slack) super = false;
  }
  if (sub && super) return SignCertificate::both;
  if (sub) return SignCertificate::lower_bound;
  if (super) return SignCertificate::upper_bound;
  return SignCertificate::none;
}

}  // namespace tow
