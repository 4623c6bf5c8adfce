#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "dvr/costmodel.hpp"
#include "dvr/dynamics.hpp"
#include "dvr/netgraph.hpp"

namespace dvr {

/// The shared linear operator of every player's backward costate dynamics:
///   Gamma(m, m) = sum_{j in N_m^out} u_mj beta_j x_j + sigma_m,
///   Gamma(m, n) = -(1 - x_n) u_nm beta_m  for n in N_m^in,
///   0 otherwise.
/// An L-matrix whose sparsity pattern matches the graph Laplacian's.
using GammaMatrix = Eigen::MatrixXd;

GammaMatrix gamma_matrix(const Network& net, std::span<const double> x,
                         std::span<const double> u);

/// Gamma * p + gamma_vec.
Eigen::VectorXd costate_rhs(const GammaMatrix& gamma, const Eigen::VectorXd& p_row,
                            const Eigen::VectorXd& gamma_vec);

enum class SolveMode { Game, PenaltyFull, PenaltyReach, Central };

/// Source vector of the backward dynamics at a state snapshot:
///   Game(i):        -f_i'(x_i) at component i, zero elsewhere;
///   PenaltyFull(i):  (-f_1', ..., -f_N');
///   PenaltyReach(i): -f_j' on R_i, zero elsewhere;
///   Central:         (-f_1', ..., -f_N')  (i ignored).
Eigen::VectorXd source_vector(SolveMode mode, NodeId i, const Network& net,
                              const CostModel& costs, std::span<const double> x,
                              const std::vector<std::vector<NodeId>>* reach_sets = nullptr);

/// Costate matrix trajectory. Game and penalty modes store one row per
/// player (row i = p_i, entry (i, j) = p_ij); central mode stores the single
/// costate lambda as one row. Terminal frame is identically zero.
class CostateTrajectory {
 public:
  CostateTrajectory() = default;
  CostateTrajectory(int samples, int rows, int dim)
      : frames_(static_cast<size_t>(samples), Eigen::MatrixXd::Zero(rows, dim)) {}

  Eigen::MatrixXd& frame(int k) { return frames_[static_cast<size_t>(k)]; }
  const Eigen::MatrixXd& frame(int k) const { return frames_[static_cast<size_t>(k)]; }
  double p(int k, int i, int j) const { return frames_[static_cast<size_t>(k)](i, j); }
  /// Diagonal entry driving player i's control rule: p_ii, or lambda_i when
  /// only the central costate is stored.
  double rule_weight(int k, NodeId i) const {
    const Eigen::MatrixXd& m = frames_[static_cast<size_t>(k)];
    return m.rows() == 1 ? m(0, i) : m(i, i);
  }
  int samples() const { return static_cast<int>(frames_.size()); }
  int rows() const { return frames_.empty() ? 0 : static_cast<int>(frames_[0].rows()); }
  int dim() const { return frames_.empty() ? 0 : static_cast<int>(frames_[0].cols()); }
  bool empty() const { return frames_.empty(); }

 private:
  std::vector<Eigen::MatrixXd> frames_;
};

/// Backward RK4 from t = T with zero terminal value; Gamma and the sources
/// are evaluated on linear interpolants of the stored x and u. Game and
/// penalty modes solve all N rows simultaneously (every player shares Gamma);
/// central mode solves the single costate row.
CostateTrajectory integrate_backward(const Network& net, const TimeGrid& grid,
                                     const StateTrajectory& x,
                                     const ControlTrajectory& u,
                                     const CostModel& costs, SolveMode mode,
                                     const std::vector<std::vector<NodeId>>* reach_sets = nullptr);

/// Projected control rule. With phi_ij = p_ii (1 - x_i) beta_j x_j:
///   u = 0                      if -phi <= g'(-w^o),
///   u = w^o + (g')^{-1}(-phi)  if g'(-w^o) < -phi < g'(0),
///   u = w^o                    if -phi >= g'(0).
/// For quadratic g this is clamp(w^o - phi / d, 0, w^o). Central and penalty
/// modes apply the same rule with lambda_i in place of p_ii.
ControlTrajectory control_update(const Network& net, const CostModel& costs,
                                 const CostateTrajectory& p,
                                 const StateTrajectory& x);

/// Switching rule for declared-concave g: u = 0 when
/// phi >= g(-w^o) / w^o, else u = w^o (ties resolve to 0).
ControlTrajectory bang_bang_control(const Network& net, const CostModel& costs,
                                    const CostateTrajectory& p,
                                    const StateTrajectory& x);

/// Player i's Hamiltonian: f_i(x_i) + sum_j g_ij(u_ij - w^o_ij)
/// + sum_j p_ij * xdot_j. The costate term uses the dynamics themselves, so
/// the recovery contribution enters as -sigma_j x_j.
double hamiltonian_player(const Network& net, const CostModel& costs, NodeId i,
                          std::span<const double> x, std::span<const double> u,
                          const Eigen::VectorXd& costate_row);

/// Central Hamiltonian: all running costs plus lambda . xdot.
double hamiltonian_central(const Network& net, const CostModel& costs,
                           std::span<const double> x, std::span<const double> u,
                           const Eigen::VectorXd& lambda);

}  // namespace dvr
