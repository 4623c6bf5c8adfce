#pragma once

#include <span>
#include <vector>

#include "dvr/costmodel.hpp"
#include "dvr/dynamics.hpp"
#include "dvr/gamecore.hpp"
#include "dvr/netgraph.hpp"

namespace dvr {

enum class InitPolicy { OriginalWeights, Zero, Supplied };

struct SweepConfig {
  double epsilon = 1e-6;  // convergence tolerance on the sup-norm residual
  int max_iters = 500;
  double damping = 0.5;  // u <- (1 - damping) u + damping u_hat
  InitPolicy init = InitPolicy::OriginalWeights;
  const ControlTrajectory* initial_control = nullptr;  // for InitPolicy::Supplied
};

enum class SweepStatus { Converged, MaxIterations, Diverged };

struct SolveReport {
  SolveMode mode = SolveMode::Game;
  SweepStatus status = SweepStatus::Converged;
  bool converged = false;
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> player_costs;
  double social_cost = 0.0;
  StateTrajectory x;
  ControlTrajectory u;
  CostateTrajectory p;
};

/// Forward-backward sweep: forward state integration, backward costate
/// integration with the mode's source, pointwise control update, damped
/// acceptance, until the undamped residual ||u_hat - u||_inf drops below
/// epsilon or max_iters is reached. Ten consecutive residual increases abort
/// with Diverged. On convergence one extra forward/backward pass makes the
/// reported (x, u, p) mutually consistent. Never throws on non-convergence;
/// the status says what happened.
SolveReport dvr_solve(const Network& net, const TimeGrid& grid,
                      std::span<const double> x0, const CostModel& costs,
                      SolveMode mode, const SweepConfig& cfg = {});

/// u == w^o frozen: forward simulation and cost evaluation only; the costate
/// trajectory is left empty.
SolveReport no_adaptation_baseline(const Network& net, const TimeGrid& grid,
                                   std::span<const double> x0,
                                   const CostModel& costs);

}  // namespace dvr
