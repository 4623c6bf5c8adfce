#include <doctest.h>

#include <cmath>
#include <vector>

#include "dvr/solver.hpp"
#include "helpers.hpp"

using namespace dvr;
using namespace dvr::testing;

TEST_CASE("zero initial infection converges immediately to original weights") {
  const Network net = two_node_network();
  const TimeGrid grid(20.0, 400);
  const CostModel costs = linear_quadratic_costs();
  const SolveReport report =
      dvr_solve(net, grid, std::vector<double>{0.0, 0.0}, costs, SolveMode::Game);
  CHECK(report.converged);
  CHECK(report.iterations == 1);
  CHECK(report.social_cost == 0.0);
  for (int k = 0; k <= grid.steps; ++k)
    for (int e = 0; e < 2; ++e) CHECK(report.u.at(k, e) == 1.0);
}

TEST_CASE("two-node game equilibrium") {
  const Network net = two_node_network();
  const TimeGrid grid(20.0, 2000);
  const CostModel costs = linear_quadratic_costs();
  const std::vector<double> x0{0.16, 0.16};
  const SolveReport game = dvr_solve(net, grid, x0, costs, SolveMode::Game);
  REQUIRE(game.converged);

  SUBCASE("symmetric instance yields a symmetric equilibrium") {
    for (int k = 0; k <= grid.steps; k += 100) {
      CHECK(game.u.at(k, 0) == doctest::Approx(game.u.at(k, 1)).epsilon(1e-9));
      CHECK(game.x.at(k, 0) == doctest::Approx(game.x.at(k, 1)).epsilon(1e-9));
    }
    CHECK(game.player_costs[0] == doctest::Approx(game.player_costs[1]).epsilon(1e-9));
  }
  SUBCASE("terminal control restores the original weight exactly") {
    CHECK(game.u.at(grid.steps, 0) == 1.0);
    CHECK(game.u.at(grid.steps, 1) == 1.0);
    for (int k = 1; k < grid.steps; ++k) CHECK(game.u.at(k, 0) < 1.0);
  }
  SUBCASE("diagonal costate is positive before T and zero at T") {
    for (int k = 0; k < grid.steps; ++k) CHECK(game.p.p(k, 0, 0) > 0.0);
    CHECK(game.p.p(grid.steps, 0, 0) == 0.0);
  }
  SUBCASE("scheme ordering on total cost") {
    const SolveReport central = dvr_solve(net, grid, x0, costs, SolveMode::Central);
    const SolveReport baseline = no_adaptation_baseline(net, grid, x0, costs);
    REQUIRE(central.converged);
    const double tol = 1e-4 * baseline.social_cost;
    CHECK(central.social_cost <= game.social_cost + tol);
    CHECK(game.social_cost <= baseline.social_cost + tol);
  }
}

TEST_CASE("converged interior controls reproduce the control rule") {
  // tight tolerance so the reported triple sits essentially at the fixed point
  const Network net = two_node_network();
  const TimeGrid grid(20.0, 1000);
  const CostModel costs = linear_quadratic_costs();
  SweepConfig cfg;
  cfg.epsilon = 1e-10;
  cfg.max_iters = 2000;
  const SolveReport report =
      dvr_solve(net, grid, std::vector<double>{0.16, 0.16}, costs, SolveMode::Game, cfg);
  REQUIRE(report.converged);
  const ControlTrajectory rechecked = control_update(net, costs, report.p, report.x);
  double gap = 0.0;
  for (int k = 0; k <= grid.steps; ++k)
    for (int e = 0; e < 2; ++e)
      gap = std::max(gap, std::abs(rechecked.at(k, e) - report.u.at(k, e)));
  CHECK(gap < 1e-8);
}

TEST_CASE("one extra damped sweep moves a converged control by less than 2 epsilon") {
  const Network net = five_node_dag();
  const TimeGrid grid(20.0, 1000);
  const CostModel costs = linear_quadratic_costs();
  SweepConfig cfg;
  const SolveReport report =
      dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::Game, cfg);
  REQUIRE(report.converged);
  const CostateTrajectory p =
      integrate_backward(net, grid, report.x, report.u, costs, SolveMode::Game);
  const ControlTrajectory u_hat = control_update(net, costs, p, report.x);
  double moved = 0.0;
  for (int k = 0; k <= grid.steps; ++k)
    for (int e = 0; e < net.edge_count(); ++e)
      moved = std::max(moved, cfg.damping * std::abs(u_hat.at(k, e) - report.u.at(k, e)));
  CHECK(moved < 2.0 * cfg.epsilon);
}

TEST_CASE("penalty modes align with the central solution") {
  const TimeGrid grid(20.0, 800);
  const CostModel costs = linear_quadratic_costs();

  SUBCASE("penalty-full matches central controls") {
    const Network net = five_node_dag();
    const SolveReport pen =
        dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::PenaltyFull);
    const SolveReport cen = dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::Central);
    REQUIRE(pen.converged);
    REQUIRE(cen.converged);
    double gap = 0.0;
    for (int k = 0; k <= grid.steps; ++k)
      for (int e = 0; e < net.edge_count(); ++e)
        gap = std::max(gap, std::abs(pen.u.at(k, e) - cen.u.at(k, e)));
    CHECK(gap < 1e-6);
  }
  SUBCASE("penalty-reach matches central on the non-strongly-connected dag") {
    const Network net = five_node_dag();
    const SolveReport reach =
        dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::PenaltyReach);
    const SolveReport cen = dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::Central);
    REQUIRE(reach.converged);
    double gap = 0.0;
    for (int k = 0; k <= grid.steps; ++k)
      for (int e = 0; e < net.edge_count(); ++e)
        gap = std::max(gap, std::abs(reach.u.at(k, e) - cen.u.at(k, e)));
    CHECK(gap < 1e-6);
  }
  SUBCASE("penalty-reach equals penalty-full on a strongly connected instance") {
    const Network net = generate_barabasi_albert(8, 2, 21);
    const SolveReport reach =
        dvr_solve(net, grid, uniform_x0(8), costs, SolveMode::PenaltyReach);
    const SolveReport full =
        dvr_solve(net, grid, uniform_x0(8), costs, SolveMode::PenaltyFull);
    REQUIRE(reach.converged);
    REQUIRE(full.converged);
    double gap = 0.0;
    for (int k = 0; k <= grid.steps; ++k)
      for (int e = 0; e < net.edge_count(); ++e)
        gap = std::max(gap, std::abs(reach.u.at(k, e) - full.u.at(k, e)));
    CHECK(gap < 1e-9);
  }
}

TEST_CASE("costate structure along a converged game run on the dag") {
  const Network net = five_node_dag();
  const TimeGrid grid(20.0, 1000);
  const CostModel costs = linear_quadratic_costs();
  const SolveReport report = dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::Game);
  REQUIRE(report.converged);

  SUBCASE("costates are nonnegative and diagonals positive before T") {
    for (int k = 0; k <= grid.steps; ++k)
      for (NodeId i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(report.p.p(k, i, j) >= -1e-9);
    for (int k = 0; k < grid.steps; ++k)
      for (NodeId i = 0; i < 5; ++i) CHECK(report.p.p(k, i, i) > 0.0);
  }
  SUBCASE("zero in-degree bounds the diagonal by alpha / sigma") {
    // node 0 has no in-edges
    for (int k = 0; k <= grid.steps; ++k)
      CHECK(report.p.p(k, 0, 0) <= 1.0 / 0.1 + 1e-9);
  }
  SUBCASE("zero out-degree makes the diagonal strictly decreasing") {
    for (NodeId i : {2, 4})
      for (int k = 0; k < grid.steps; ++k)
        CHECK(report.p.p(k, i, i) > report.p.p(k + 1, i, i));
  }
  SUBCASE("interior controls stay below the original weight where phi > 0") {
    for (int k = 1; k < grid.steps; ++k)
      for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        const double phi = report.p.p(k, ed.from, ed.from) *
                           (1.0 - report.x.at(k, ed.from)) * net.beta(ed.to) *
                           report.x.at(k, ed.to);
        if (phi > 1e-12) CHECK(report.u.at(k, e) < ed.weight);
      }
  }
}

TEST_CASE("hamiltonian pointwise optimality on a converged run") {
  const Network net = two_node_network();
  const TimeGrid grid(20.0, 1000);
  const CostModel costs = linear_quadratic_costs();
  const SolveReport report =
      dvr_solve(net, grid, std::vector<double>{0.16, 0.16}, costs, SolveMode::Game);
  REQUIRE(report.converged);

  std::mt19937_64 rng(31);
  for (int sample = 0; sample < 100; ++sample) {
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(grid.samples()));
    const int e = static_cast<int>(rng() % 2);
    const NodeId i = net.edge(e).from;
    std::vector<double> x(report.x.snapshot(k).begin(), report.x.snapshot(k).end());
    std::vector<double> u(report.u.snapshot(k).begin(), report.u.snapshot(k).end());
    Eigen::VectorXd row(2);
    for (int j = 0; j < 2; ++j) row(j) = report.p.p(k, i, j);
    const double h_star = hamiltonian_player(net, costs, i, x, u, row);
    for (int step = 0; step <= 100; ++step) {
      u[static_cast<size_t>(e)] = net.edge(e).weight * step / 100.0;
      CHECK(h_star <= hamiltonian_player(net, costs, i, x, u, row) + 1e-10);
    }
  }
}

TEST_CASE("outbreak regime grows the baseline infection") {
  const Network net = generate_barabasi_albert(30, 4, 2);
  REQUIRE(largest_real_eigenvalue(net) > 0.0);
  const TimeGrid grid(20.0, 1000);
  const CostModel costs = linear_quadratic_costs();
  const SolveReport baseline =
      no_adaptation_baseline(net, grid, uniform_x0(30), costs);
  double start = 0.0, end = 0.0;
  for (int i = 0; i < 30; ++i) {
    start += baseline.x.at(0, i);
    end += baseline.x.at(grid.steps, i);
  }
  CHECK(end > start);
  CHECK(baseline.iterations == 0);
  CHECK(baseline.p.empty());
}

TEST_CASE("baseline with zero infection has zero cost") {
  const Network net = five_node_dag();
  const TimeGrid grid(20.0, 100);
  const SolveReport report = no_adaptation_baseline(
      net, grid, std::vector<double>(5, 0.0), linear_quadratic_costs());
  CHECK(report.social_cost == 0.0);
}

TEST_CASE("non-convergence at max_iters is reported, not thrown") {
  const Network net = two_node_network();
  const TimeGrid grid(20.0, 400);
  SweepConfig cfg;
  cfg.max_iters = 1;
  const SolveReport report = dvr_solve(net, grid, std::vector<double>{0.16, 0.16},
                                       linear_quadratic_costs(), SolveMode::Game, cfg);
  CHECK_FALSE(report.converged);
  CHECK(report.status == SweepStatus::MaxIterations);
  CHECK(report.iterations == 1);
  CHECK(report.final_residual >= cfg.epsilon);
  CHECK(report.player_costs.size() == 2);  // costs still reported
}

TEST_CASE("solver rejects bad configuration") {
  const Network net = two_node_network();
  const TimeGrid grid(20.0, 100);
  const std::vector<double> x0{0.16, 0.16};
  const CostModel costs = linear_quadratic_costs();
  SweepConfig cfg;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(dvr_solve(net, grid, x0, costs, SolveMode::Game, cfg),
                  std::invalid_argument);
  cfg = SweepConfig{};
  cfg.damping = 1.5;
  CHECK_THROWS_AS(dvr_solve(net, grid, x0, costs, SolveMode::Game, cfg),
                  std::invalid_argument);
  cfg = SweepConfig{};
  cfg.init = InitPolicy::Supplied;
  CHECK_THROWS_AS(dvr_solve(net, grid, x0, costs, SolveMode::Game, cfg),
                  std::invalid_argument);
}

TEST_CASE("identical inputs give bitwise-identical reports") {
  const Network net = five_node_dag();
  const TimeGrid grid(20.0, 500);
  const CostModel costs = linear_quadratic_costs();
  const SolveReport a = dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::Game);
  const SolveReport b = dvr_solve(net, grid, uniform_x0(5), costs, SolveMode::Game);
  CHECK(a.iterations == b.iterations);
  CHECK(a.final_residual == b.final_residual);
  CHECK(a.u.raw() == b.u.raw());
  CHECK(a.x.raw() == b.x.raw());
  CHECK(a.social_cost == b.social_cost);
}

TEST_CASE("zero-control initialization reaches the same fixed point") {
  const Network net = two_node_network();
  const TimeGrid grid(20.0, 500);
  const CostModel costs = linear_quadratic_costs();
  SweepConfig from_zero;
  from_zero.init = InitPolicy::Zero;
  const SolveReport a =
      dvr_solve(net, grid, std::vector<double>{0.16, 0.16}, costs, SolveMode::Game, from_zero);
  const SolveReport b =
      dvr_solve(net, grid, std::vector<double>{0.16, 0.16}, costs, SolveMode::Game);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  double gap = 0.0;
  for (int k = 0; k <= grid.steps; ++k)
    for (int e = 0; e < 2; ++e)
      gap = std::max(gap, std::abs(a.u.at(k, e) - b.u.at(k, e)));
  CHECK(gap < 1e-5);  // both sit within solver tolerance of the fixed point
}
