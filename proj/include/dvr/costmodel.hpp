#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dvr/dynamics.hpp"
#include "dvr/netgraph.hpp"

namespace dvr {

/// Infection cost f_i: [0,1] -> R+, monotonically increasing and C^1.
/// The built-in kind is linear, f_i(x) = alpha_i x.
class InfectionCost {
 public:
  static InfectionCost linear(double alpha);
  static InfectionCost linear(std::vector<double> alpha_per_node);
  static InfectionCost custom(std::function<double(NodeId, double)> f,
                              std::function<double(NodeId, double)> df);

  double value(NodeId i, double x) const;
  double slope(NodeId i, double x) const;

 private:
  InfectionCost() = default;
  std::vector<double> alpha_;  // one entry = uniform, else per node
  std::function<double(NodeId, double)> f_, df_;
};

/// Weight-deviation cost g_e(w) on the deviation w = u - w^o. The built-in
/// kind is quadratic, g(w) = d/2 w^2, convex and C^1 with g(0) = 0. A custom
/// convex kind supplies g, g', and optionally (g')^{-1}; without the inverse
/// the library bisects g' on [-w^o, 0]. A concave kind supplies only g and is
/// handled exclusively through the bang-bang rule.
class WeightCost {
 public:
  static WeightCost quadratic(double d);
  static WeightCost quadratic(std::vector<double> d_per_edge);
  static WeightCost custom_convex(
      std::function<double(int, double)> g, std::function<double(int, double)> dg,
      std::function<double(int, double)> inverse = nullptr);
  static WeightCost concave(std::function<double(int, double)> g);

  double value(int e, double dev) const;
  double slope(int e, double dev) const;  // errors for the concave kind
  bool is_concave() const { return concave_; }
  bool is_quadratic() const { return !d_.empty(); }
  double quadratic_coefficient(int e) const;
  bool has_inverse() const { return is_quadratic() || static_cast<bool>(inv_); }
  double inverse(int e, double s) const;  // raw (g')^{-1}, no range handling

 private:
  WeightCost() = default;
  bool concave_ = false;
  std::vector<double> d_;  // one entry = uniform, else per edge
  std::function<double(int, double)> g_, dg_, inv_;
};

struct CostModel {
  InfectionCost infection;
  WeightCost weight;
};

/// J_i = integral of f_i(x_i) + sum_{j in N_i^out} g_ij(u_ij - w^o_ij) over
/// [0, T], composite trapezoid on the grid.
double player_cost(const Network& net, const TimeGrid& grid,
                   const StateTrajectory& x, const ControlTrajectory& u,
                   const CostModel& costs, NodeId i);

/// J_o = sum of all player costs.
double social_cost(const Network& net, const TimeGrid& grid,
                   const StateTrajectory& x, const ControlTrajectory& u,
                   const CostModel& costs);

enum class PenaltyMode { Full, Reachability };

/// Penalty c_i at a state snapshot: the infection costs of every other agent
/// (Full), or of the agents in R_i \ {i} (Reachability, needs precomputed
/// reachability sets).
double penalty(const Network& net, const CostModel& costs, PenaltyMode mode,
               NodeId i, std::span<const double> x,
               const std::vector<std::vector<NodeId>>* reach_sets = nullptr);

/// The unique deviation w in [-w^o_e, 0] with g'_e(w) = slope. Accepts slopes
/// in the closed interval [g'(-w^o), g'(0)]; anything outside is an error.
double weight_cost_derivative_inverse(const Network& net, const CostModel& costs,
                                      int e, double slope);

}  // namespace dvr
