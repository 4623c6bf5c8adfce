#include "dvr/costmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace dvr {

InfectionCost InfectionCost::linear(double alpha) {
  return linear(std::vector<double>{alpha});
}

InfectionCost InfectionCost::linear(std::vector<double> alpha_per_node) {
  if (alpha_per_node.empty())
    throw std::invalid_argument("infection cost: alpha list is empty");
  for (double a : alpha_per_node)
    if (!(a >= 0.0)) throw std::invalid_argument("infection cost: alpha must be >= 0");
  InfectionCost c;
  c.alpha_ = std::move(alpha_per_node);
  return c;
}

InfectionCost InfectionCost::custom(std::function<double(NodeId, double)> f,
                                    std::function<double(NodeId, double)> df) {
  if (!f || !df) throw std::invalid_argument("infection cost: f and f' are required");
  InfectionCost c;
  c.f_ = std::move(f);
  c.df_ = std::move(df);
  return c;
}

double InfectionCost::value(NodeId i, double x) const {
  if (f_) return f_(i, x);
  return (alpha_.size() == 1 ? alpha_[0] : alpha_[static_cast<size_t>(i)]) * x;
}

double InfectionCost::slope(NodeId i, double x) const {
  if (df_) return df_(i, x);
  (void)x;
  return alpha_.size() == 1 ? alpha_[0] : alpha_[static_cast<size_t>(i)];
}

WeightCost WeightCost::quadratic(double d) {
  return quadratic(std::vector<double>{d});
}

WeightCost WeightCost::quadratic(std::vector<double> d_per_edge) {
  if (d_per_edge.empty())
    throw std::invalid_argument("weight cost: d list is empty");
  for (double d : d_per_edge)
    if (!(d > 0.0)) throw std::invalid_argument("weight cost: d must be > 0");
  WeightCost c;
  c.d_ = std::move(d_per_edge);
  return c;
}

WeightCost WeightCost::custom_convex(std::function<double(int, double)> g,
                                     std::function<double(int, double)> dg,
                                     std::function<double(int, double)> inverse) {
  if (!g || !dg) throw std::invalid_argument("weight cost: g and g' are required");
  WeightCost c;
  c.g_ = std::move(g);
  c.dg_ = std::move(dg);
  c.inv_ = std::move(inverse);
  return c;
}

WeightCost WeightCost::concave(std::function<double(int, double)> g) {
  if (!g) throw std::invalid_argument("weight cost: g is required");
  WeightCost c;
  c.concave_ = true;
  c.g_ = std::move(g);
  return c;
}

double WeightCost::value(int e, double dev) const {
  if (g_) return g_(e, dev);
  const double d = d_.size() == 1 ? d_[0] : d_[static_cast<size_t>(e)];
  return 0.5 * d * dev * dev;
}

double WeightCost::slope(int e, double dev) const {
  if (concave_)
    throw std::logic_error("weight cost: concave kind has no derivative support");
  if (dg_) return dg_(e, dev);
  const double d = d_.size() == 1 ? d_[0] : d_[static_cast<size_t>(e)];
  return d * dev;
}

double WeightCost::quadratic_coefficient(int e) const {
  if (!is_quadratic())
    throw std::logic_error("weight cost: not the quadratic kind");
  return d_.size() == 1 ? d_[0] : d_[static_cast<size_t>(e)];
}

double WeightCost::inverse(int e, double s) const {
  if (is_quadratic()) return s / quadratic_coefficient(e);
  if (!inv_) throw std::logic_error("weight cost: no derivative inverse supplied");
  return inv_(e, s);
}

namespace {

double running_cost(const Network& net, const CostModel& costs, NodeId i,
                    std::span<const double> x, std::span<const double> u) {
  double l = costs.infection.value(i, x[static_cast<size_t>(i)]);
  for (int e : net.out_edges(i))
    l += costs.weight.value(e, u[static_cast<size_t>(e)] - net.edge(e).weight);
  return l;
}

}  // namespace

double player_cost(const Network& net, const TimeGrid& grid,
                   const StateTrajectory& x, const ControlTrajectory& u,
                   const CostModel& costs, NodeId i) {
  if (x.samples() != grid.samples() || u.samples() != grid.samples())
    throw std::invalid_argument("player_cost: trajectory/grid mismatch");
  if (x.dim() != net.node_count() || u.dim() != net.edge_count())
    throw std::invalid_argument("player_cost: trajectory dimension mismatch");
  const double h = grid.dt();
  double acc = 0.0;
  for (int k = 0; k <= grid.steps; ++k) {
    const double w = (k == 0 || k == grid.steps) ? 0.5 : 1.0;
    acc += w * running_cost(net, costs, i, x.snapshot(k), u.snapshot(k));
  }
  return acc * h;
}

double social_cost(const Network& net, const TimeGrid& grid,
                   const StateTrajectory& x, const ControlTrajectory& u,
                   const CostModel& costs) {
  double total = 0.0;
  for (NodeId i = 0; i < net.node_count(); ++i)
    total += player_cost(net, grid, x, u, costs, i);
  return total;
}

double penalty(const Network& net, const CostModel& costs, PenaltyMode mode,
               NodeId i, std::span<const double> x,
               const std::vector<std::vector<NodeId>>* reach_sets) {
  if (x.size() != static_cast<size_t>(net.node_count()))
    throw std::invalid_argument("penalty: snapshot dimension mismatch");
  double c = 0.0;
  if (mode == PenaltyMode::Full) {
    for (NodeId j = 0; j < net.node_count(); ++j)
      if (j != i) c += costs.infection.value(j, x[static_cast<size_t>(j)]);
  } else {
    if (reach_sets == nullptr)
      throw std::invalid_argument("penalty: reachability sets are required");
    for (NodeId j : (*reach_sets)[static_cast<size_t>(i)])
      if (j != i) c += costs.infection.value(j, x[static_cast<size_t>(j)]);
  }
  return c;
}

double weight_cost_derivative_inverse(const Network& net, const CostModel& costs,
                                      int e, double slope) {
  const WeightCost& g = costs.weight;
  const double w = net.edge(e).weight;
  const double lo_slope = g.slope(e, -w);
  const double hi_slope = g.slope(e, 0.0);
  if (!(slope >= lo_slope && slope <= hi_slope))
    throw std::domain_error("weight_cost_derivative_inverse: slope outside [g'(-w^o), g'(0)]");
  if (g.has_inverse()) return g.inverse(e, slope);

  // bisection on the nondecreasing g' over [-w^o, 0]
  double lo = -w, hi = 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (g.slope(e, mid) < slope)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace dvr
