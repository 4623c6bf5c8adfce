#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dvr/oracle.hpp"
#include "helpers.hpp"

using namespace dvr;
using namespace dvr::testing;

namespace {

SolveReport converged_two_node(const TimeGrid& grid) {
  static const Network net = two_node_network();
  return dvr_solve(net, grid, std::vector<double>{0.16, 0.16},
                   linear_quadratic_costs(), SolveMode::Game);
}

}  // namespace

TEST_CASE("ne_deviation_check") {
  const Network net = two_node_network();
  const TimeGrid grid(20.0, 2000);
  const CostModel costs = linear_quadratic_costs();
  const SolveReport report = converged_two_node(grid);
  REQUIRE(report.converged);

  SUBCASE("zero-magnitude probe changes nothing") {
    const DeviationProbe probe{0, 0, 100, 300, 0.0};
    CHECK(ne_deviation_check(report, net, grid, costs, std::vector<DeviationProbe>{probe}) ==
          0.0);
  }
  SUBCASE("random probes cannot improve a converged equilibrium") {
    const auto probes = sample_deviation_probes(report, net, 20, 1e-3, 12345);
    REQUIRE(probes.size() == 20);
    const double worst = ne_deviation_check(report, net, grid, costs, probes);
    CHECK(worst < 1e-5);
  }
  SUBCASE("a corrupted control is flagged as improvable") {
    SolveReport corrupted = report;
    for (int k = 0; k <= grid.steps; ++k) corrupted.u.at(k, 0) *= 0.5;
    corrupted.x = integrate_forward(net, grid, std::vector<double>{0.16, 0.16}, corrupted.u);
    for (NodeId i = 0; i < 2; ++i)
      corrupted.player_costs[static_cast<size_t>(i)] =
          player_cost(net, grid, corrupted.x, corrupted.u, costs, i);
    const auto probes = sample_deviation_probes(corrupted, net, 20, 1e-3, 999);
    const double worst = ne_deviation_check(corrupted, net, grid, costs, probes);
    CHECK(worst > 1e-6);
  }
  SUBCASE("infeasible probes are rejected") {
    const DeviationProbe past_cap{0, 0, 100, 300, 0.9};  // equilibrium u > 0.1 there
    CHECK_THROWS_AS(
        ne_deviation_check(report, net, grid, costs, std::vector<DeviationProbe>{past_cap}),
        std::invalid_argument);
    const DeviationProbe wrong_player{1, 0, 100, 300, 1e-3};
    CHECK_THROWS_AS(ne_deviation_check(report, net, grid, costs,
                                       std::vector<DeviationProbe>{wrong_player}),
                    std::invalid_argument);
  }
}

TEST_CASE("brute_force_best_response") {
  const Network net = two_node_network();
  const TimeGrid grid(20.0, 2000);
  const CostModel costs = linear_quadratic_costs();

  SUBCASE("zero infection keeps the original weights at zero cost") {
    const ControlTrajectory opponents = ControlTrajectory::original_weights(net, grid);
    const BestResponseResult best = brute_force_best_response(
        net, grid, std::vector<double>{0.0, 0.0}, costs, opponents, 0, 11, 3);
    CHECK(best.cost == 0.0);
    for (int k = 0; k <= grid.steps; ++k) CHECK(best.control.at(k, 0) == 1.0);
  }
  SUBCASE("oracle cost matches the sweep equilibrium within one percent") {
    const SolveReport report = converged_two_node(grid);
    REQUIRE(report.converged);
    for (NodeId player = 0; player < 2; ++player) {
      const BestResponseResult best = brute_force_best_response(
          net, grid, std::vector<double>{0.16, 0.16}, costs, report.u, player, 11, 3);
      const double rel =
          std::abs(best.cost - report.player_costs[static_cast<size_t>(player)]) /
          report.player_costs[static_cast<size_t>(player)];
      CHECK(rel < 0.01);
    }
  }
  SUBCASE("first-segment value falls as the neighbor's infection rises") {
    // strong incentive instance: the best response caps the edge weight less
    // and less as the opponent starts more infected
    const Network strong(2, {{0, 1, 1.0}, {1, 0, 1.0}}, {0.04, 0.04}, {0.1, 0.1});
    const ControlTrajectory opponents = ControlTrajectory::original_weights(strong, grid);
    std::vector<double> first_values;
    for (double neighbor_x0 : {0.1, 0.5, 0.9}) {
      const BestResponseResult best = brute_force_best_response(
          strong, grid, std::vector<double>{0.16, neighbor_x0}, costs, opponents, 0, 11, 3);
      first_values.push_back(best.control.at(0, 0));
    }
    CHECK(first_values[0] >= first_values[1]);
    CHECK(first_values[1] >= first_values[2]);
    CHECK(first_values[0] > first_values[2]);
  }
  SUBCASE("enlarging a nested search space cannot raise the best cost") {
    const SolveReport report = converged_two_node(grid);
    const std::vector<double> x0{0.16, 0.16};
    const double coarse_levels =
        brute_force_best_response(net, grid, x0, costs, report.u, 0, 6, 3).cost;
    const double fine_levels =
        brute_force_best_response(net, grid, x0, costs, report.u, 0, 11, 3).cost;
    CHECK(fine_levels <= coarse_levels + 1e-12);  // 6 levels nest inside 11
    const double one_segment =
        brute_force_best_response(net, grid, x0, costs, report.u, 0, 11, 1).cost;
    CHECK(fine_levels <= one_segment + 1e-12);  // constants nest inside 3 segments
  }
  SUBCASE("guards") {
    const Network big = generate_barabasi_albert(5, 1, 1);
    const TimeGrid small_grid(10.0, 50);
    const ControlTrajectory opp = ControlTrajectory::original_weights(big, small_grid);
    CHECK_THROWS_AS(brute_force_best_response(big, small_grid, uniform_x0(5), costs, opp,
                                              0, 5, 2),
                    std::invalid_argument);
    const ControlTrajectory opp2 = ControlTrajectory::original_weights(net, small_grid);
    CHECK_THROWS_AS(brute_force_best_response(net, small_grid, uniform_x0(2), costs, opp2,
                                              0, 12, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_best_response(net, small_grid, uniform_x0(2), costs, opp2,
                                              0, 11, 5),
                    std::invalid_argument);
  }
}

TEST_CASE("adjoint_gradient_check") {
  const CostModel costs = linear_quadratic_costs();

  SUBCASE("decoupled node has the analytic sensitivity") {
    const Network net = isolated_nodes(1, 0.1);
    const TimeGrid grid(20.0, 2000);
    SweepConfig cfg;
    const SolveReport report =
        dvr_solve(net, grid, std::vector<double>{0.16}, costs, SolveMode::Game, cfg);
    REQUIRE(report.converged);
    const AdjointCheck check =
        adjoint_gradient_check(report, net, grid, costs, SolveMode::Game, 0, 0, 1e-5);
    const double analytic = 10.0 * (1.0 - std::exp(-2.0));
    CHECK(std::abs(check.costate_value - analytic) < 1e-6);
    CHECK(std::abs(check.finite_difference - analytic) < 1e-6);
    // the finite difference carries the O(h^2) quadrature error of the cost
    // integral, so agreement is tight but not exact
    CHECK(check.relative_error < 1e-5);
  }
  SUBCASE("all pairs on the 5-node dag") {
    const Network net = five_node_dag();
    const TimeGrid grid(20.0, 1000);
    const SolveReport report =
        dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::Game);
    REQUIRE(report.converged);
    const auto reach = reachable_sets(net);
    for (NodeId i = 0; i < 5; ++i)
      for (NodeId j = 0; j < 5; ++j) {
        const AdjointCheck check =
            adjoint_gradient_check(report, net, grid, costs, SolveMode::Game, i, j, 1e-5);
        const bool i_influences_j =
            std::find(reach[static_cast<size_t>(j)].begin(),
                      reach[static_cast<size_t>(j)].end(), i) !=
            reach[static_cast<size_t>(j)].end();
        if (i_influences_j) {
          CHECK(check.relative_error < 1e-3);
        } else {
          // block-triangular structure: both sides vanish identically
          CHECK(std::abs(check.costate_value) < 1e-8);
          CHECK(std::abs(check.finite_difference) < 1e-8);
        }
      }
  }
  SUBCASE("central mode measures the social sensitivity") {
    const Network net = two_node_network();
    const TimeGrid grid(20.0, 1000);
    const SolveReport report = dvr_solve(net, grid, std::vector<double>{0.16, 0.16},
                                         costs, SolveMode::Central);
    REQUIRE(report.converged);
    for (NodeId j = 0; j < 2; ++j) {
      const AdjointCheck check =
          adjoint_gradient_check(report, net, grid, costs, SolveMode::Central, 0, j, 1e-5);
      CHECK(check.relative_error < 1e-3);
    }
  }
  SUBCASE("central differences converge at second order") {
    const Network net = two_node_network();
    const TimeGrid grid(20.0, 1000);
    const SolveReport report = dvr_solve(net, grid, std::vector<double>{0.16, 0.16},
                                         costs, SolveMode::Game);
    REQUIRE(report.converged);
    // large deltas keep truncation above the rounding floor
    const AdjointCheck coarse =
        adjoint_gradient_check(report, net, grid, costs, SolveMode::Game, 0, 0, 0.08);
    const AdjointCheck fine =
        adjoint_gradient_check(report, net, grid, costs, SolveMode::Game, 0, 0, 0.04);
    const double e_coarse = std::abs(coarse.finite_difference - coarse.costate_value);
    const double e_fine = std::abs(fine.finite_difference - fine.costate_value);
    CHECK(e_coarse / e_fine > 2.5);
    CHECK(e_coarse / e_fine < 6.0);
  }
  SUBCASE("delta must keep the initial state interior") {
    const Network net = two_node_network();
    const TimeGrid grid(20.0, 200);
    const SolveReport report = dvr_solve(net, grid, std::vector<double>{0.16, 0.16},
                                         costs, SolveMode::Game);
    CHECK_THROWS_AS(
        adjoint_gradient_check(report, net, grid, costs, SolveMode::Game, 0, 0, 0.5),
        std::invalid_argument);
  }
}

TEST_CASE("potential_equivalence_check") {
  const CostModel costs = linear_quadratic_costs();
  const TimeGrid grid(20.0, 800);

  SUBCASE("two-node instance") {
    const Network net = two_node_network();
    const PotentialCheck check = potential_equivalence_check(
        net, grid, std::vector<double>{0.16, 0.16}, costs, SweepConfig{});
    CHECK(check.control_gap < 1e-6);
    CHECK(check.max_identity_error < 1e-8 * std::abs(check.social_cost));
  }
  SUBCASE("identity is exact when the substitution is the control itself") {
    const Network net = five_node_dag();
    const SolveReport pen =
        dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::PenaltyFull);
    REQUIRE(pen.converged);
    for (NodeId i = 0; i < 5; ++i) {
      const double jhat =
          penalized_player_cost(net, grid, pen.x, pen.u, costs, SolveMode::PenaltyFull, i);
      const double jo = social_cost(net, grid, pen.x, pen.u, costs);
      CHECK((jhat - jhat) - (jo - jo) == 0.0);
    }
  }
  SUBCASE("penalized cost decomposes into own cost plus integrated penalty") {
    const Network net = five_node_dag();
    const auto reach = reachable_sets(net);
    const SolveReport run =
        dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::PenaltyReach);
    REQUIRE(run.converged);
    // full-mode penalized cost of player i sums everyone's infection cost
    // plus only i's weight cost; cross-check against raw integrals
    for (NodeId i = 0; i < 5; ++i) {
      const double jhat = penalized_player_cost(net, grid, run.x, run.u, costs,
                                                SolveMode::PenaltyFull, i);
      double expected = player_cost(net, grid, run.x, run.u, costs, i);
      const double h = grid.dt();
      for (int k = 0; k <= grid.steps; ++k) {
        const double w = (k == 0 || k == grid.steps) ? 0.5 : 1.0;
        expected += w * h * penalty(net, costs, PenaltyMode::Full, i, run.x.snapshot(k));
      }
      CHECK(jhat == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}
