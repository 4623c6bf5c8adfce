#include "dvr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dvr {

namespace {

ControlTrajectory apply_probe(const Network& net, const ControlTrajectory& u,
                              const DeviationProbe& probe) {
  if (probe.edge < 0 || probe.edge >= net.edge_count())
    throw std::invalid_argument("deviation probe: edge out of range");
  if (net.edge(probe.edge).from != probe.player)
    throw std::invalid_argument("deviation probe: edge does not belong to the player");
  if (probe.k_begin < 0 || probe.k_end > u.samples() || probe.k_begin > probe.k_end)
    throw std::invalid_argument("deviation probe: window out of range");
  const double cap = net.edge(probe.edge).weight;
  ControlTrajectory result = u;
  for (int k = probe.k_begin; k < probe.k_end; ++k) {
    const double v = u.at(k, probe.edge) + probe.delta;
    if (v < -1e-12 || v > cap + 1e-12)
      throw std::invalid_argument("deviation probe: perturbed control leaves [0, w^o]");
    result.at(k, probe.edge) = std::clamp(v, 0.0, cap);
  }
  return result;
}

}  // namespace

double ne_deviation_check(const SolveReport& report, const Network& net,
                          const TimeGrid& grid, const CostModel& costs,
                          std::span<const DeviationProbe> probes) {
  double worst = 0.0;
  for (const DeviationProbe& probe : probes) {
    const ControlTrajectory perturbed = apply_probe(net, report.u, probe);
    const StateTrajectory x = integrate_forward(net, grid, report.x.snapshot(0), perturbed);
    const double j_eq =
        report.player_costs[static_cast<size_t>(probe.player)];
    const double j_pert = player_cost(net, grid, x, perturbed, costs, probe.player);
    const double decrease = (j_eq - j_pert) / std::max(std::abs(j_eq), 1e-12);
    worst = std::max(worst, decrease);
  }
  return worst;
}

std::vector<DeviationProbe> sample_deviation_probes(const SolveReport& report,
                                                    const Network& net, int count,
                                                    double delta,
                                                    std::uint64_t seed) {
  if (net.edge_count() == 0)
    throw std::invalid_argument("sample_deviation_probes: network has no edges");
  std::mt19937_64 rng(seed);
  const int samples = report.u.samples();
  std::uniform_int_distribution<int> pick_edge(0, net.edge_count() - 1);
  std::uniform_int_distribution<int> pick_len(std::max(2, samples / 20),
                                              std::max(3, samples / 10));
  std::vector<DeviationProbe> probes;
  int attempts = 0;
  while (static_cast<int>(probes.size()) < count) {
    if (++attempts > 100 * count)
      throw std::runtime_error("sample_deviation_probes: no feasible probes found");
    DeviationProbe probe;
    probe.edge = pick_edge(rng);
    probe.player = net.edge(probe.edge).from;
    const int len = pick_len(rng);
    if (samples - 1 - len <= 1) continue;
    std::uniform_int_distribution<int> pick_begin(1, samples - 1 - len);
    probe.k_begin = pick_begin(rng);
    probe.k_end = probe.k_begin + len;
    double head_up = std::numeric_limits<double>::infinity();
    double head_down = std::numeric_limits<double>::infinity();
    const double cap = net.edge(probe.edge).weight;
    for (int k = probe.k_begin; k < probe.k_end; ++k) {
      head_up = std::min(head_up, cap - report.u.at(k, probe.edge));
      head_down = std::min(head_down, report.u.at(k, probe.edge));
    }
    const bool up_first = rng() & 1u;
    if (up_first && head_up >= delta)
      probe.delta = delta;
    else if (head_down >= delta)
      probe.delta = -delta;
    else if (head_up >= delta)
      probe.delta = delta;
    else
      continue;
    probes.push_back(probe);
  }
  return probes;
}

BestResponseResult brute_force_best_response(const Network& net, const TimeGrid& grid,
                                             std::span<const double> x0,
                                             const CostModel& costs,
                                             const ControlTrajectory& opponents_controls,
                                             NodeId player, int levels, int segments) {
  if (net.node_count() > 3)
    throw std::invalid_argument("brute force: instances are capped at N <= 3");
  if (segments < 1 || segments > 4)
    throw std::invalid_argument("brute force: segments must lie in [1, 4]");
  if (levels < 2 || levels > 11)
    throw std::invalid_argument("brute force: levels must lie in [2, 11]");
  const auto player_edges = net.out_edges(player);
  const int slots = segments * static_cast<int>(player_edges.size());
  double space = std::pow(static_cast<double>(levels), slots);
  if (space > static_cast<double>(1 << 21))
    throw std::invalid_argument("brute force: search space too large");

  const int m = grid.steps;
  // grid node k belongs to segment floor(k * segments / m), last node capped
  auto segment_of = [&](int k) {
    return std::min(segments - 1, k * segments / m);
  };

  BestResponseResult best;
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<int> digits(static_cast<size_t>(slots), 0);
  const int total = static_cast<int>(space);
  ControlTrajectory candidate = opponents_controls;
  for (int index = 0; index < total; ++index) {
    int rest = index;
    for (int s = 0; s < slots; ++s) {
      digits[static_cast<size_t>(s)] = rest % levels;
      rest /= levels;
    }
    for (size_t ei = 0; ei < player_edges.size(); ++ei) {
      const int e = player_edges[ei];
      const double cap = net.edge(e).weight;
      for (int k = 0; k <= m; ++k) {
        const int digit =
            digits[ei * static_cast<size_t>(segments) + static_cast<size_t>(segment_of(k))];
        candidate.at(k, e) = cap * digit / (levels - 1);
      }
    }
    const StateTrajectory x = integrate_forward(net, grid, x0, candidate);
    const double cost = player_cost(net, grid, x, candidate, costs, player);
    if (cost < best.cost) {
      best.cost = cost;
      best.control = candidate;
    }
  }
  return best;
}

double penalized_player_cost(const Network& net, const TimeGrid& grid,
                             const StateTrajectory& x, const ControlTrajectory& u,
                             const CostModel& costs, SolveMode mode, NodeId i,
                             const std::vector<std::vector<NodeId>>* reach_sets) {
  double cost = player_cost(net, grid, x, u, costs, i);
  if (mode == SolveMode::Game) return cost;
  const PenaltyMode pmode =
      mode == SolveMode::PenaltyReach ? PenaltyMode::Reachability : PenaltyMode::Full;
  const double h = grid.dt();
  double acc = 0.0;
  for (int k = 0; k <= grid.steps; ++k) {
    const double w = (k == 0 || k == grid.steps) ? 0.5 : 1.0;
    acc += w * penalty(net, costs, pmode, i, x.snapshot(k), reach_sets);
  }
  return cost + acc * h;
}

AdjointCheck adjoint_gradient_check(const SolveReport& report, const Network& net,
                                    const TimeGrid& grid, const CostModel& costs,
                                    SolveMode mode, NodeId i, NodeId j, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("adjoint check: delta must be > 0");
  std::vector<std::vector<NodeId>> reach;
  const std::vector<std::vector<NodeId>>* reach_ptr = nullptr;
  if (mode == SolveMode::PenaltyReach) {
    reach = reachable_sets(net);
    reach_ptr = &reach;
  }

  std::vector<double> x0(report.x.snapshot(0).begin(), report.x.snapshot(0).end());
  const double base = x0[static_cast<size_t>(j)];
  if (base - delta <= 0.0 || base + delta >= 1.0)
    throw std::invalid_argument("adjoint check: delta pushes x_j(0) out of (0, 1)");

  auto mode_cost = [&](double xj0) {
    std::vector<double> shifted = x0;
    shifted[static_cast<size_t>(j)] = xj0;
    const StateTrajectory x = integrate_forward(net, grid, shifted, report.u);
    if (mode == SolveMode::Central) {
      double total = 0.0;
      for (NodeId k = 0; k < net.node_count(); ++k)
        total += player_cost(net, grid, x, report.u, costs, k);
      return total;
    }
    return penalized_player_cost(net, grid, x, report.u, costs, mode, i, reach_ptr);
  };

  AdjointCheck check;
  check.finite_difference = (mode_cost(base + delta) - mode_cost(base - delta)) / (2.0 * delta);
  check.costate_value =
      mode == SolveMode::Central ? report.p.p(0, 0, j) : report.p.p(0, i, j);
  check.relative_error = std::abs(check.finite_difference - check.costate_value) /
                         std::max(std::abs(check.costate_value), 1e-12);
  return check;
}

PotentialCheck potential_equivalence_check(const Network& net, const TimeGrid& grid,
                                           std::span<const double> x0,
                                           const CostModel& costs,
                                           const SweepConfig& cfg, int substitutions,
                                           std::uint64_t seed) {
  const SolveReport pen = dvr_solve(net, grid, x0, costs, SolveMode::PenaltyFull, cfg);
  const SolveReport cen = dvr_solve(net, grid, x0, costs, SolveMode::Central, cfg);
  if (!pen.converged || !cen.converged)
    throw std::runtime_error("potential check: a mode failed to converge");

  PotentialCheck check;
  check.social_cost = cen.social_cost;
  for (int k = 0; k < pen.u.samples(); ++k)
    for (int e = 0; e < pen.u.dim(); ++e)
      check.control_gap =
          std::max(check.control_gap, std::abs(pen.u.at(k, e) - cen.u.at(k, e)));

  // Potential identity: replacing one player's control changes the penalized
  // individual cost exactly as much as the social cost.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double j_hat_base_all = social_cost(net, grid, pen.x, pen.u, costs);
  for (int trial = 0; trial < substitutions; ++trial) {
    std::uniform_int_distribution<int> pick_player(0, net.node_count() - 1);
    NodeId player = pick_player(rng);
    while (net.out_edges(player).empty()) player = pick_player(rng);

    ControlTrajectory substituted = pen.u;
    const int segments = 3;
    for (int e : net.out_edges(player)) {
      const double cap = net.edge(e).weight;
      double level[segments];
      for (double& v : level) v = cap * unif(rng);
      for (int k = 0; k <= grid.steps; ++k) {
        const int s = std::min(segments - 1, k * segments / grid.steps);
        substituted.at(k, e) = level[s];
      }
    }
    const StateTrajectory x_sub = integrate_forward(net, grid, x0, substituted);

    const double jhat_base = penalized_player_cost(net, grid, pen.x, pen.u, costs,
                                                   SolveMode::PenaltyFull, player);
    const double jhat_sub = penalized_player_cost(net, grid, x_sub, substituted, costs,
                                                  SolveMode::PenaltyFull, player);
    const double jo_base = j_hat_base_all;
    const double jo_sub = social_cost(net, grid, x_sub, substituted, costs);
    check.max_identity_error = std::max(
        check.max_identity_error, std::abs((jhat_base - jhat_sub) - (jo_base - jo_sub)));
  }
  return check;
}

}  // namespace dvr
