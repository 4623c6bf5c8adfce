#include "dvr/gamecore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dvr {

GammaMatrix gamma_matrix(const Network& net, std::span<const double> x,
                         std::span<const double> u) {
  const int n = net.node_count();
  if (x.size() != static_cast<size_t>(n))
    throw std::invalid_argument("gamma_matrix: state dimension mismatch");
  if (u.size() != static_cast<size_t>(net.edge_count()))
    throw std::invalid_argument("gamma_matrix: control dimension mismatch");
  GammaMatrix gamma = GammaMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) gamma(i, i) = net.sigma(i);
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    const double ue = u[static_cast<size_t>(e)];
    // edge (a, b): a's diagonal picks up u_ab beta_b x_b, and a feeds row b
    gamma(ed.from, ed.from) += ue * net.beta(ed.to) * x[static_cast<size_t>(ed.to)];
    gamma(ed.to, ed.from) = -(1.0 - x[static_cast<size_t>(ed.from)]) * ue * net.beta(ed.to);
  }
  return gamma;
}

Eigen::VectorXd costate_rhs(const GammaMatrix& gamma, const Eigen::VectorXd& p_row,
                            const Eigen::VectorXd& gamma_vec) {
  if (gamma.rows() != gamma.cols() || gamma.rows() != p_row.size() ||
      p_row.size() != gamma_vec.size())
    throw std::invalid_argument("costate_rhs: dimension mismatch");
  return gamma * p_row + gamma_vec;
}

Eigen::VectorXd source_vector(SolveMode mode, NodeId i, const Network& net,
                              const CostModel& costs, std::span<const double> x,
                              const std::vector<std::vector<NodeId>>* reach_sets) {
  const int n = net.node_count();
  if (x.size() != static_cast<size_t>(n))
    throw std::invalid_argument("source_vector: state dimension mismatch");
  Eigen::VectorXd src = Eigen::VectorXd::Zero(n);
  switch (mode) {
    case SolveMode::Game:
      src(i) = -costs.infection.slope(i, x[static_cast<size_t>(i)]);
      break;
    case SolveMode::PenaltyFull:
    case SolveMode::Central:
      for (NodeId j = 0; j < n; ++j)
        src(j) = -costs.infection.slope(j, x[static_cast<size_t>(j)]);
      break;
    case SolveMode::PenaltyReach:
      if (reach_sets == nullptr)
        throw std::invalid_argument("source_vector: reachability sets are required");
      for (NodeId j : (*reach_sets)[static_cast<size_t>(i)])
        src(j) = -costs.infection.slope(j, x[static_cast<size_t>(j)]);
      break;
  }
  return src;
}

namespace {

// Fills the source matrix S with S(i, j) = [source_vector(mode, i)]_j.
void source_matrix(SolveMode mode, const Network& net, const CostModel& costs,
                   std::span<const double> x,
                   const std::vector<std::vector<NodeId>>* reach_sets,
                   Eigen::MatrixXd& s) {
  const int n = net.node_count();
  s.setZero();
  if (mode == SolveMode::Central) {
    for (NodeId j = 0; j < n; ++j)
      s(0, j) = -costs.infection.slope(j, x[static_cast<size_t>(j)]);
    return;
  }
  if (mode == SolveMode::Game) {
    for (NodeId i = 0; i < n; ++i)
      s(i, i) = -costs.infection.slope(i, x[static_cast<size_t>(i)]);
    return;
  }
  if (mode == SolveMode::PenaltyFull) {
    for (NodeId j = 0; j < n; ++j) {
      const double v = -costs.infection.slope(j, x[static_cast<size_t>(j)]);
      for (NodeId i = 0; i < n; ++i) s(i, j) = v;
    }
    return;
  }
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j : (*reach_sets)[static_cast<size_t>(i)])
      s(i, j) = -costs.infection.slope(j, x[static_cast<size_t>(j)]);
}

}  // namespace

CostateTrajectory integrate_backward(const Network& net, const TimeGrid& grid,
                                     const StateTrajectory& x,
                                     const ControlTrajectory& u,
                                     const CostModel& costs, SolveMode mode,
                                     const std::vector<std::vector<NodeId>>* reach_sets) {
  const int n = net.node_count();
  if (x.samples() != grid.samples() || u.samples() != grid.samples())
    throw std::invalid_argument("integrate_backward: trajectory/grid mismatch");
  if (x.dim() != n || u.dim() != net.edge_count())
    throw std::invalid_argument("integrate_backward: trajectory dimension mismatch");
  if (mode == SolveMode::PenaltyReach && reach_sets == nullptr)
    throw std::invalid_argument("integrate_backward: reachability sets are required");

  const int rows = mode == SolveMode::Central ? 1 : n;
  CostateTrajectory p(grid.samples(), rows, n);
  const double h = grid.dt();
  const int m = grid.steps;

  std::vector<double> xmid(static_cast<size_t>(n)), umid(static_cast<size_t>(u.dim()));
  Eigen::MatrixXd s_end(rows, n), s_mid(rows, n), s_begin(rows, n);
  Eigen::MatrixXd k1(rows, n), k2(rows, n), k3(rows, n), k4(rows, n);

  for (int k = m - 1; k >= 0; --k) {
    auto x0 = x.snapshot(k);
    auto x1 = x.snapshot(k + 1);
    auto u0 = u.snapshot(k);
    auto u1 = u.snapshot(k + 1);
    for (int i = 0; i < n; ++i)
      xmid[static_cast<size_t>(i)] =
          0.5 * (x0[static_cast<size_t>(i)] + x1[static_cast<size_t>(i)]);
    for (int e = 0; e < u.dim(); ++e)
      umid[static_cast<size_t>(e)] =
          0.5 * (u0[static_cast<size_t>(e)] + u1[static_cast<size_t>(e)]);

    const GammaMatrix g_end = gamma_matrix(net, x1, u1);
    const GammaMatrix g_mid = gamma_matrix(net, xmid, umid);
    const GammaMatrix g_begin = gamma_matrix(net, x0, u0);
    source_matrix(mode, net, costs, x1, reach_sets, s_end);
    source_matrix(mode, net, costs, xmid, reach_sets, s_mid);
    source_matrix(mode, net, costs, x0, reach_sets, s_begin);

    // rows hold costate vectors, so d/dt P = P Gamma^T + S; step is -h
    const Eigen::MatrixXd& p1 = p.frame(k + 1);
    k1.noalias() = p1 * g_end.transpose();
    k1 += s_end;
    k2.noalias() = (p1 - 0.5 * h * k1) * g_mid.transpose();
    k2 += s_mid;
    k3.noalias() = (p1 - 0.5 * h * k2) * g_mid.transpose();
    k3 += s_mid;
    k4.noalias() = (p1 - h * k3) * g_begin.transpose();
    k4 += s_begin;

    Eigen::MatrixXd& p0 = p.frame(k);
    p0 = p1 - h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!p0.allFinite())
      throw IntegrationError(
          "integrate_backward: non-finite costate at step " + std::to_string(k), k);
  }
  return p;
}

namespace {

double rule_value(const Network& net, const CostModel& costs, int e, double phi) {
  const Edge& ed = net.edge(e);
  if (costs.weight.is_quadratic()) {
    const double d = costs.weight.quadratic_coefficient(e);
    return std::clamp(ed.weight - phi / d, 0.0, ed.weight);
  }
  const double neg_phi = -phi;
  if (neg_phi <= costs.weight.slope(e, -ed.weight)) return 0.0;
  if (neg_phi >= costs.weight.slope(e, 0.0)) return ed.weight;
  return ed.weight + weight_cost_derivative_inverse(net, costs, e, neg_phi);
}

}  // namespace

ControlTrajectory control_update(const Network& net, const CostModel& costs,
                                 const CostateTrajectory& p,
                                 const StateTrajectory& x) {
  if (costs.weight.is_concave())
    throw std::invalid_argument("control_update: concave g requires the bang-bang rule");
  if (p.samples() != x.samples() || p.dim() != net.node_count() ||
      x.dim() != net.node_count())
    throw std::invalid_argument("control_update: trajectory mismatch");
  ControlTrajectory u(x.samples(), net.edge_count());
  for (int k = 0; k < x.samples(); ++k) {
    auto xk = x.snapshot(k);
    for (int e = 0; e < net.edge_count(); ++e) {
      const Edge& ed = net.edge(e);
      const double phi = p.rule_weight(k, ed.from) *
                         (1.0 - xk[static_cast<size_t>(ed.from)]) * net.beta(ed.to) *
                         xk[static_cast<size_t>(ed.to)];
      u.at(k, e) = rule_value(net, costs, e, phi);
    }
  }
  return u;
}

ControlTrajectory bang_bang_control(const Network& net, const CostModel& costs,
                                    const CostateTrajectory& p,
                                    const StateTrajectory& x) {
  if (!costs.weight.is_concave())
    throw std::invalid_argument("bang_bang_control: g is not declared concave");
  if (p.samples() != x.samples() || p.dim() != net.node_count() ||
      x.dim() != net.node_count())
    throw std::invalid_argument("bang_bang_control: trajectory mismatch");
  ControlTrajectory u(x.samples(), net.edge_count());
  for (int k = 0; k < x.samples(); ++k) {
    auto xk = x.snapshot(k);
    for (int e = 0; e < net.edge_count(); ++e) {
      const Edge& ed = net.edge(e);
      const double phi = p.rule_weight(k, ed.from) *
                         (1.0 - xk[static_cast<size_t>(ed.from)]) * net.beta(ed.to) *
                         xk[static_cast<size_t>(ed.to)];
      const double threshold = costs.weight.value(e, -ed.weight) / ed.weight;
      u.at(k, e) = phi >= threshold ? 0.0 : ed.weight;
    }
  }
  return u;
}

double hamiltonian_player(const Network& net, const CostModel& costs, NodeId i,
                          std::span<const double> x, std::span<const double> u,
                          const Eigen::VectorXd& costate_row) {
  const int n = net.node_count();
  if (x.size() != static_cast<size_t>(n) ||
      u.size() != static_cast<size_t>(net.edge_count()) || costate_row.size() != n)
    throw std::invalid_argument("hamiltonian_player: dimension mismatch");
  double ham = costs.infection.value(i, x[static_cast<size_t>(i)]);
  for (int e : net.out_edges(i))
    ham += costs.weight.value(e, u[static_cast<size_t>(e)] - net.edge(e).weight);
  const std::vector<double> dx = mean_field_rhs(net, x, u);
  for (int j = 0; j < n; ++j) ham += costate_row(j) * dx[static_cast<size_t>(j)];
  return ham;
}

double hamiltonian_central(const Network& net, const CostModel& costs,
                           std::span<const double> x, std::span<const double> u,
                           const Eigen::VectorXd& lambda) {
  const int n = net.node_count();
  if (x.size() != static_cast<size_t>(n) ||
      u.size() != static_cast<size_t>(net.edge_count()) || lambda.size() != n)
    throw std::invalid_argument("hamiltonian_central: dimension mismatch");
  double ham = 0.0;
  for (NodeId i = 0; i < n; ++i)
    ham += costs.infection.value(i, x[static_cast<size_t>(i)]);
  for (int e = 0; e < net.edge_count(); ++e)
    ham += costs.weight.value(e, u[static_cast<size_t>(e)] - net.edge(e).weight);
  const std::vector<double> dx = mean_field_rhs(net, x, u);
  for (int j = 0; j < n; ++j) ham += lambda(j) * dx[static_cast<size_t>(j)];
  return ham;
}

}  // namespace dvr
