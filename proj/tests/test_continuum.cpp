#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tow/continuum.hpp"
#include "tow/examples.hpp"

#include "support/helpers.hpp"

using namespace tow;
using namespace tow::testsupport;

namespace {
const ScalarField kIdentity = [](std::span<const double> p) { return p[0]; };
}

TEST_CASE("interval sampling covers with half a spacing") {
  const auto s = sample_domain(fixtures::unit_interval_grid(21), 0.5);
  CHECK(s.cloud.size() == 21);
  CHECK(s.covering_radius == doctest::Approx(0.025));
  CHECK(s.cloud.coord(10, 0) == doctest::Approx(0.5));
}

TEST_CASE("advantage at step sizes 1 and 1/2 for the kinked interval payoff") {
  const auto spec = fixtures::unit_interval_grid(21);
  const auto f = fixtures::interval_kink_payoff();
  const auto b1 = eps_advantage(spec, f, 1.0, 20'000, 5e-4);
  CHECK(b1.contains(0.0));
  CHECK(std::abs(b1.midpoint()) <= 1e-3);
  const auto b2 = eps_advantage(spec, f, 0.5, 20'000, 5e-4);
  CHECK(b2.contains(1.0 / 3.0));
  CHECK(std::abs(b2.midpoint() - 1.0 / 3.0) <= 1e-3);
}

TEST_CASE("eps below the connectivity margin is rejected") {
  CHECK_THROWS_WITH_AS(
      eps_advantage(fixtures::unit_interval_grid(11), kIdentity, 0.05),
      doctest::Contains("margin"), std::invalid_argument);
}

TEST_CASE("constant payoff gives identical one-point rungs") {
  const auto ladder = advantage_ladder(
      fixtures::unit_interval_grid(101),
      [](std::span<const double>) { return -0.25; }, 0.2, 2,
      LadderSchedule::halving);
  for (const auto& rung : ladder.rungs) {
    CHECK(rung.bracket.lower == -0.25);
    CHECK(rung.bracket.upper == -0.25);
    CHECK(rung.bracket.n == 1);
  }
  CHECK(ladder.certificate == 0.0);
  CHECK(ladder.uncertainty() == 0.0);
}

TEST_CASE("halving ladder for f(x) = x lands on the mean 1/2") {
  const auto ladder = advantage_ladder(fixtures::unit_interval_grid(401),
                                       kIdentity, 0.2, 3, LadderSchedule::halving,
                                       200'000, 5e-3);
  REQUIRE(ladder.rungs.size() == 4);
  CHECK(ladder.rungs.back().eps == doctest::Approx(0.025));
  CHECK(std::abs(ladder.estimate() - 0.5) <= ladder.uncertainty());
  CHECK(ladder.uncertainty() <= 0.06);
}

TEST_CASE("thirding ladder stays within the oscillation certificate") {
  // base 0.2025 = 81 grid steps on the 401-point grid, so every rung radius
  // is an exact grid multiple
  const auto ladder =
      advantage_ladder(fixtures::unit_interval_grid(401), kIdentity, 0.2025, 2,
                       LadderSchedule::thirding, 200'000, 5e-3);
  const auto& r0 = ladder.rungs.front();
  for (const auto& rk : ladder.rungs) {
    CHECK(std::abs(rk.bracket.midpoint() - r0.bracket.midpoint()) <=
          ladder.certificate + r0.bracket.width() + rk.bracket.width());
  }
}

TEST_CASE("step-like payoff obeys the rung certificate") {
  const ScalarField step = [](std::span<const double> p) {
    return p[0] < 0.35 ? 1.0 : (p[0] < 0.65 ? 0.2 : -0.8);
  };
  const auto ladder = advantage_ladder(fixtures::unit_interval_grid(201), step,
                                       0.2, 2, LadderSchedule::halving, 100'000,
                                       5e-3);
  const auto& r0 = ladder.rungs.front();
  for (const auto& rk : ladder.rungs) {
    CHECK(std::abs(rk.bracket.midpoint() - r0.bracket.midpoint()) <=
          ladder.certificate + r0.bracket.width() + rk.bracket.width());
  }
}

TEST_CASE("the advantage moves continuously in the step size, up to oscillation") {
  // nearby step sizes on a fine grid give nearby constants; the oscillation
  // of the payoff over two ball radii bounds the jump
  const auto spec = fixtures::unit_interval_grid(201);
  const auto f = fixtures::interval_kink_payoff();
  const auto sampled = sample_domain(spec, 0.2);
  const Graph g = Graph::eps_adjacency(sampled.cloud);
  const VertexFunction fs = sample_field(g.cloud(), f);
  double prev_mid = 0.0, prev_width = 0.0;
  bool first = true;
  for (double eps : {0.20, 0.205, 0.21, 0.215, 0.22}) {
    const auto b = eps_advantage(spec, f, eps, 50'000, 1e-3);
    if (!first) {
      const double allowance =
          metric_oscillation(g, fs, 2.0 * eps) + prev_width + b.width();
      CHECK(std::abs(b.midpoint() - prev_mid) <= allowance);
    }
    prev_mid = b.midpoint();
    prev_width = b.width();
    first = false;
  }
}

TEST_CASE("a too-deep ladder is rejected naming the feasible depth") {
  CHECK_THROWS_WITH_AS(
      advantage_ladder(fixtures::unit_interval_grid(41), kIdentity, 0.2, 4,
                       LadderSchedule::halving),
      doctest::Contains("max feasible depth"), std::invalid_argument);
}

TEST_CASE("zero payoff solves to a constant on the interval") {
  const auto sol = solve_on_domain(fixtures::unit_interval_grid(51),
                                   [](std::span<const double>) { return 0.0; },
                                   0.12, 1e-10);
  REQUIRE(sol.result.converged);
  CHECK(std::abs(sol.advantage) <= 1e-9);
  CHECK(sol.result.u.oscillation() <= 1e-9);
}

TEST_CASE("constant payoff is absorbed by the shift") {
  const auto sol = solve_on_domain(fixtures::unit_interval_grid(51),
                                   [](std::span<const double>) { return 1.0; },
                                   0.12, 1e-10);
  REQUIRE(sol.result.converged);
  CHECK(sol.advantage == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.result.u.oscillation() <= 1e-9);
}

TEST_CASE("identity payoff solve passes the pointwise equation and both bounds") {
  const auto sol =
      solve_on_domain(fixtures::unit_interval_grid(201), kIdentity, 0.1, 1e-9);
  REQUIRE(sol.result.converged);

  // pointwise: -Lap_eps u = f - advantage up to 2 residual / eps^2
  const VertexFunction lap =
      eps_inf_laplacian(sol.graph, sol.result.u, sol.eps);
  const VertexFunction shifted = sol.f_samples - sol.advantage;
  const double budget = 2.0 * sol.result.residual / (sol.eps * sol.eps) + 1e-12;
  for (int x = 0; x < lap.size(); ++x) {
    CHECK(std::abs(-lap[x] - shifted[x]) <= budget);
  }

  const auto rep = check_lipschitz(sol);
  CHECK(rep.pairs_passed);
  CHECK(rep.oscillation_passed);
  CHECK(rep.lip_constant == doctest::Approx(5.0 * shifted.sup_norm()));
}

TEST_CASE("an injected spike trips the pairwise bound with the pair reported") {
  auto sol =
      solve_on_domain(fixtures::unit_interval_grid(201), kIdentity, 0.1, 1e-9);
  sol.result.u[100] += 10.0;
  const auto rep = check_lipschitz(sol);
  CHECK(!rep.pairs_passed);
  CHECK(rep.worst_excess > 0.0);
  CHECK((rep.worst_x == 100 || rep.worst_y == 100));
}

TEST_CASE("sign certificates from constants and from solve output") {
  const Graph g = grid_graph(0.0, 1.0, 41, 0.1);
  const VertexFunction zero = VertexFunction::zeros(41);

  VertexFunction f_pos = VertexFunction::zeros(41);
  f_pos[7] = 0.5;
  CHECK(sign_certificate(g, f_pos, zero, 0.1) == SignCertificate::lower_bound);
  CHECK(sign_certificate(g, -1.0 * f_pos, zero, 0.1) == SignCertificate::upper_bound);
  CHECK(sign_certificate(g, zero, zero, 0.1) == SignCertificate::both);

  const auto sol =
      solve_on_domain(fixtures::unit_interval_grid(201), kIdentity, 0.1, 1e-9);
  const double margin = 2.0 * sol.result.residual / (sol.eps * sol.eps) + 1e-12;
  const VertexFunction shifted = sol.f_samples - sol.advantage;
  CHECK(sign_certificate(sol.graph, shifted + margin, sol.result.u, sol.eps) !=
        SignCertificate::none);
  const auto upper = sign_certificate(sol.graph, shifted + margin, sol.result.u, sol.eps);
  CHECK((upper == SignCertificate::lower_bound || upper == SignCertificate::both));
  const auto lower = sign_certificate(sol.graph, shifted - margin, sol.result.u, sol.eps);
  CHECK((lower == SignCertificate::upper_bound || lower == SignCertificate::both));
}

TEST_CASE("advantage bracket of the recentred payoff straddles zero") {
  const auto sol =
      solve_on_domain(fixtures::unit_interval_grid(101), kIdentity, 0.1, 1e-9);
  REQUIRE(sol.result.converged);
  const auto b = advantage_bracket(sol.graph, sol.f_samples - sol.advantage, 20'000, 1e-4);
  CHECK(b.lower <= 1e-4);
  CHECK(b.upper >= -1e-4);
}

TEST_CASE("radial reduction: constant payoff is exact, identity is float-level") {
  const auto flat = radial_reduction_check(1.0, [](double) { return 2.0; }, 0.1,
                                           30, 16, 21);
  CHECK(flat.max_abs_difference == 0.0);

  const auto rep = radial_reduction_check(1.0, [](double s) { return s; }, 0.1,
                                          50, 64, 41);
  CHECK(rep.max_abs_difference <= rep.tolerance);
  CHECK(rep.max_abs_difference <= 1e-10);  // the reduction is exact on spokes

  const auto coarse = radial_reduction_check(1.0, [](double s) { return s; }, 0.1,
                                             50, 4, 41);
  CHECK(coarse.max_abs_difference <= coarse.tolerance);
  CHECK(rep.tolerance < coarse.tolerance);  // finer rays certify a tighter budget
}

TEST_CASE("degenerate polar samplers are rejected") {
  CHECK_THROWS_AS(radial_reduction_check(1.0, [](double) { return 0.0; }, 0.1, 5, 1, 21),
                  std::invalid_argument);
  CHECK_THROWS_AS(radial_reduction_check(1.0, [](double) { return 0.0; }, 0.1, 5, 8, 1),
                  std::invalid_argument);
}

TEST_CASE("polygon domains must be convex") {
  DomainSpec spec;
  spec.shape = ConvexPolygon{{{0.0, 0.0}, {1.0, 0.0}, {0.2, 0.2}, {0.0, 1.0}}};
  spec.mesh = 0.1;
  spec.sampler = UniformGridSampler{};
  CHECK_THROWS_WITH_AS(sample_domain(spec, 0.3), doctest::Contains("convex"),
                       std::invalid_argument);

  DomainSpec square;
  square.shape = ConvexPolygon{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
  square.mesh = 0.1;
  square.sampler = UniformGridSampler{};
  const auto s = sample_domain(square, 0.3);
  CHECK(s.cloud.size() > 100);
  const Graph g = Graph::eps_adjacency(s.cloud);
  CHECK(g.metric_diameter() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("disc grid sampler covers the rim") {
  DomainSpec spec;
  spec.shape = Disc{1.0};
  spec.mesh = 0.1;
  spec.sampler = UniformGridSampler{};
  const auto s = sample_domain(spec, 0.3);
  const Graph g = Graph::eps_adjacency(s.cloud);
  CHECK(g.metric_diameter() == doctest::Approx(2.0));
}
