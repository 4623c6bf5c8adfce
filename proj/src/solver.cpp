#include "dvr/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dvr {

namespace {

double sup_distance(const ControlTrajectory& a, const ControlTrajectory& b) {
  double r = 0.0;
  for (int k = 0; k < a.samples(); ++k)
    for (int e = 0; e < a.dim(); ++e)
      r = std::max(r, std::abs(a.at(k, e) - b.at(k, e)));
  return r;
}

void fill_costs(const Network& net, const TimeGrid& grid, const CostModel& costs,
                SolveReport& report) {
  report.player_costs.resize(static_cast<size_t>(net.node_count()));
  report.social_cost = 0.0;
  for (NodeId i = 0; i < net.node_count(); ++i) {
    report.player_costs[static_cast<size_t>(i)] =
        player_cost(net, grid, report.x, report.u, costs, i);
    report.social_cost += report.player_costs[static_cast<size_t>(i)];
  }
}

}  // namespace

SolveReport dvr_solve(const Network& net, const TimeGrid& grid,
                      std::span<const double> x0, const CostModel& costs,
                      SolveMode mode, const SweepConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("sweep: epsilon must be > 0");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
    throw std::invalid_argument("sweep: damping must lie in (0, 1]");
  if (cfg.max_iters < 1) throw std::invalid_argument("sweep: max_iters must be >= 1");
  if (costs.weight.is_concave())
    throw std::invalid_argument("sweep: concave weight costs are not supported");

  std::vector<std::vector<NodeId>> reach;
  const std::vector<std::vector<NodeId>>* reach_ptr = nullptr;
  if (mode == SolveMode::PenaltyReach) {
    reach = reachable_sets(net);
    reach_ptr = &reach;
  }

  SolveReport report;
  report.mode = mode;

  ControlTrajectory u;
  switch (cfg.init) {
    case InitPolicy::OriginalWeights:
      u = ControlTrajectory::original_weights(net, grid);
      break;
    case InitPolicy::Zero:
      u = ControlTrajectory::zero(net, grid);
      break;
    case InitPolicy::Supplied:
      if (cfg.initial_control == nullptr)
        throw std::invalid_argument("sweep: supplied init requires a control");
      u = *cfg.initial_control;
      u.check_admissible(net);
      if (u.samples() != grid.samples())
        throw std::invalid_argument("sweep: supplied control does not match the grid");
      break;
  }

  StateTrajectory x = integrate_forward(net, grid, x0, u);
  double previous_residual = std::numeric_limits<double>::infinity();
  int growth_streak = 0;
  report.status = SweepStatus::MaxIterations;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    CostateTrajectory p = integrate_backward(net, grid, x, u, costs, mode, reach_ptr);
    ControlTrajectory u_hat = control_update(net, costs, p, x);
    const double residual = sup_distance(u_hat, u);
    report.iterations = iter;
    report.final_residual = residual;

    if (residual < cfg.epsilon) {
      report.status = SweepStatus::Converged;
      report.converged = true;
      // one consistency pass: the reported controls generate the reported
      // state and costate
      report.u = std::move(u_hat);
      report.x = integrate_forward(net, grid, x0, report.u);
      report.p = integrate_backward(net, grid, report.x, report.u, costs, mode, reach_ptr);
      fill_costs(net, grid, costs, report);
      return report;
    }

    growth_streak = residual > previous_residual ? growth_streak + 1 : 0;
    previous_residual = residual;
    if (growth_streak >= 10) {
      report.status = SweepStatus::Diverged;
      report.u = std::move(u);
      report.x = std::move(x);
      report.p = std::move(p);
      fill_costs(net, grid, costs, report);
      return report;
    }

    for (int k = 0; k < u.samples(); ++k)
      for (int e = 0; e < u.dim(); ++e)
        u.at(k, e) = (1.0 - cfg.damping) * u.at(k, e) + cfg.damping * u_hat.at(k, e);
    x = integrate_forward(net, grid, x0, u);
  }

  report.u = std::move(u);
  report.x = std::move(x);
  report.p = integrate_backward(net, grid, report.x, report.u, costs, mode, reach_ptr);
  fill_costs(net, grid, costs, report);
  return report;
}

SolveReport no_adaptation_baseline(const Network& net, const TimeGrid& grid,
                                   std::span<const double> x0,
                                   const CostModel& costs) {
  SolveReport report;
  report.mode = SolveMode::Central;  // scheme label is informational here
  report.status = SweepStatus::Converged;
  report.converged = true;
  report.iterations = 0;
  report.final_residual = 0.0;
  report.u = ControlTrajectory::original_weights(net, grid);
  report.x = integrate_forward(net, grid, x0, report.u);
  fill_costs(net, grid, costs, report);
  return report;
}

}  // namespace dvr
