#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dvr/solver.hpp"

namespace dvr {

/// Unilateral perturbation of one player's control: add `delta` to edge
/// `edge` on grid nodes [k_begin, k_end). The perturbed control must stay in
/// [0, w^o]; applying an out-of-range probe is an error.
struct DeviationProbe {
  NodeId player = 0;
  int edge = 0;
  int k_begin = 0;
  int k_end = 0;
  double delta = 0.0;
};

/// Re-integrates each probe with the other players frozen at equilibrium and
/// returns the worst relative decrease of the deviating player's cost,
/// max over probes of (J_i(eq) - J_i(perturbed)) / J_i(eq). A valid open-loop
/// equilibrium admits only second-order decreases.
double ne_deviation_check(const SolveReport& report, const Network& net,
                          const TimeGrid& grid, const CostModel& costs,
                          std::span<const DeviationProbe> probes);

/// Draws feasible probes on interior grid windows uniformly at random
/// (deterministic for a fixed seed). The sign of delta is chosen toward the
/// side with headroom.
std::vector<DeviationProbe> sample_deviation_probes(const SolveReport& report,
                                                    const Network& net, int count,
                                                    double delta,
                                                    std::uint64_t seed);

struct BestResponseResult {
  ControlTrajectory control;  // opponents' controls with the player's best fill-in
  double cost = 0.0;
};

/// Exhaustive search over piecewise-constant controls for one player: every
/// out-edge takes one of `levels` evenly spaced values in [0, w^o] on each of
/// `segments` equal time segments; all opponents stay at
/// `opponents_controls`. Guards: N <= 3, segments <= 4, levels <= 11, and at
/// most 2^21 candidates.
BestResponseResult brute_force_best_response(const Network& net, const TimeGrid& grid,
                                             std::span<const double> x0,
                                             const CostModel& costs,
                                             const ControlTrajectory& opponents_controls,
                                             NodeId player, int levels, int segments);

struct AdjointCheck {
  double finite_difference = 0.0;  // central difference of the frozen-control cost
  double costate_value = 0.0;      // p_ij(0), or lambda_j(0) in central mode
  double relative_error = 0.0;
};

/// With controls frozen at the converged trajectory, p_ij(0) equals the
/// sensitivity of player i's mode cost (penalties included) to x_j(0).
/// Compares a central finite difference at +/- delta against the integrated
/// costate.
AdjointCheck adjoint_gradient_check(const SolveReport& report, const Network& net,
                                    const TimeGrid& grid, const CostModel& costs,
                                    SolveMode mode, NodeId i, NodeId j, double delta);

struct PotentialCheck {
  double control_gap = 0.0;          // ||u_penalty-full - u_central||_inf
  double max_identity_error = 0.0;   // worst |delta J_hat_i - delta J_o|
  double social_cost = 0.0;          // central-run J_o, the identity reference
};

/// Solves the penalty-full game and the central problem on the same data,
/// reports the sup-norm control gap, and verifies the potential identity on
/// `substitutions` random unilateral control replacements: the change of the
/// penalized individual cost must equal the change of the social cost.
/// Throws if either mode fails to converge.
PotentialCheck potential_equivalence_check(const Network& net, const TimeGrid& grid,
                                           std::span<const double> x0,
                                           const CostModel& costs,
                                           const SweepConfig& cfg,
                                           int substitutions = 10,
                                           std::uint64_t seed = 2024);

/// Penalized cost of player i along a trajectory: J_i plus the integral of
/// the mode's penalty term (zero extra term in game mode).
double penalized_player_cost(const Network& net, const TimeGrid& grid,
                             const StateTrajectory& x, const ControlTrajectory& u,
                             const CostModel& costs, SolveMode mode, NodeId i,
                             const std::vector<std::vector<NodeId>>* reach_sets = nullptr);

}  // namespace dvr
