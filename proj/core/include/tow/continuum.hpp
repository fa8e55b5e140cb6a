#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tow/function.hpp"
#include "tow/graph.hpp"
#include "tow/solver.hpp"
#include "tow/value.hpp"

namespace tow {

struct Interval {
  double a = 0.0, b = 1.0;
};
struct Disc {
  double radius = 1.0;
};
struct ConvexPolygon {
  std::vector<std::array<double, 2>> vertices;  // counterclockwise or clockwise
};

struct UniformGridSampler {};
struct PolarSpokesSampler {
  int n_rays = 16;
  int n_radii = 11;
};

// A convex domain plus a sampling recipe. mesh is the target pitch; the
// sampler must cover the domain so that every domain point lies within the
// reported covering radius of the cloud.
struct DomainSpec {
  std::variant<Interval, Disc, ConvexPolygon> shape;
  double mesh = 0.05;
  std::variant<UniformGridSampler, PolarSpokesSampler> sampler;
};

using ScalarField = std::function<double(std::span<const double>)>;

struct SampledDomain {
  PointCloud cloud;
  double covering_radius;  // conservative bound
};

SampledDomain sample_domain(const DomainSpec& spec, double epsilon);

VertexFunction sample_field(const PointCloud& cloud, const ScalarField& f);

// Long-term advantage bracket for the step-size-eps game with unscaled
// running payoff f. Requires eps >= 2 * covering radius.
AdvantageBracket eps_advantage(const DomainSpec& domain, const ScalarField& f,
                               double eps, long n_max = 200'000,
                               double tol = 1e-3);

enum class LadderSchedule { halving, thirding };

struct LadderRung {
  double eps;
  AdvantageBracket bracket;
};

// Advantage constants along eps * s^-k with the oscillation certificate
// osc(f, 2 * base_eps): any two rungs differ by at most the certificate plus
// their bracket widths, and the deepest rung is the continuation estimate.
struct AdvantageLadder {
  double base_eps = 0.0;
  LadderSchedule schedule = LadderSchedule::halving;
  std::vector<LadderRung> rungs;
  double certificate = 0.0;   // osc(f, 2 * base_eps) on the cloud
  double deepest_osc = 0.0;   // osc(f, 2 * deepest eps) on the cloud

  double estimate() const { return rungs.back().bracket.midpoint(); }
  double uncertainty() const { return deepest_osc + rungs.back().bracket.width(); }
};

AdvantageLadder advantage_ladder(const DomainSpec& domain, const ScalarField& f,
                                 double base_eps, int depth,
                                 LadderSchedule schedule, long n_max = 200'000,
                                 double tol = 1e-3);

// Solution of the eps-step equation: value iteration on the running payoff
// eps^2 (f - c_mid) / 2, where c_mid is the advantage bracket midpoint. The
// reported advantage folds the solver's own drift refinement back in, so u
// satisfies -Lap_eps u = f - advantage up to 2*residual/eps^2 pointwise.
struct DomainSolution {
  Graph graph;
  VertexFunction f_samples;     // unscaled payoff on the cloud
  AdvantageBracket bracket;     // bracket used for the shift
  double advantage = 0.0;       // refined constant, in units of f
  SolveResult result;           // payoff-scale solve (u, residual, ...)
  double eps = 0.0;
};

DomainSolution solve_on_domain(const DomainSpec& domain, const ScalarField& f,
                               double eps, double tol = 1e-9,
                               long n_max = 200'000);

// Pairwise verification of |u(x) - u(y)| <= K d(x,y) + K eps with
// K = 5 diam(V) ||f - c||, plus the oscillation bound 6 diam(V)^2 ||f - c||.
struct LipschitzReport {
  bool pairs_passed = false;
  bool oscillation_passed = false;
  double lip_constant = 0.0;   // K
  double osc_bound = 0.0;      // 6 diam^2 ||f - c||
  double worst_excess = 0.0;   // max of |u(x)-u(y)| - (K d + K eps)
  int worst_x = -1, worst_y = -1;
};

LipschitzReport check_lipschitz(const DomainSolution& sol);

// Disc-vs-interval consistency for radial payoffs: iterate on a disc sampled
// by polar spokes and on the 1-d radius grid, with identical radii and eps,
// and report the largest deviation across sweeps. The certified tolerance is
// the per-sweep angular oscillation allowance accumulated over the sweeps
// plus a floating-point cushion.
struct RadialReport {
  double max_abs_difference = 0.0;
  double tolerance = 0.0;
  double chord_error = 0.0;  // max rim chord between adjacent rays
  int n_rays = 0;
  int n_radii = 0;
  int sweeps = 0;
};

RadialReport radial_reduction_check(double radius,
                                    const std::function<double(double)>& g_radial,
                                    double eps, int sweeps, int n_rays,
                                    int n_radii);

// Pointwise sign test of -Lap_eps u against f: a subsolution certifies a
// nonnegative advantage, a supersolution a nonpositive one.
enum class SignCertificate { lower_bound, upper_bound, both, none };

SignCertificate sign_certificate(const Graph& g, const VertexFunction& f,
                                 const VertexFunction& u, double eps);

const char* to_string(LadderSchedule s);
const char* to_string(SignCertificate c);

}  // namespace tow
