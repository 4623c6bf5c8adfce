#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dvr/netgraph.hpp"

namespace dvr {

/// Uniform discretization of [0, t_final] into `steps` intervals; all
/// trajectories live on the steps + 1 grid nodes t_k = k * t_final / steps.
struct TimeGrid {
  double t_final;
  int steps;

  TimeGrid(double t_final_, int steps_) : t_final(t_final_), steps(steps_) {
    if (!(t_final > 0.0)) throw std::invalid_argument("grid: t_final must be > 0");
    if (steps < 2) throw std::invalid_argument("grid: steps must be >= 2");
  }
  double dt() const { return t_final / steps; }
  int samples() const { return steps + 1; }
  double time(int k) const { return t_final * k / steps; }
};

/// Per-node infection probabilities x_i(t_k), row-major (sample, node).
class StateTrajectory {
 public:
  StateTrajectory() = default;
  StateTrajectory(int samples, int dim)
      : samples_(samples),
        dim_(dim),
        v_(static_cast<size_t>(samples) * static_cast<size_t>(dim), 0.0) {}

  double& at(int k, int i) { return v_[static_cast<size_t>(k) * dim_ + i]; }
  double at(int k, int i) const { return v_[static_cast<size_t>(k) * dim_ + i]; }
  std::span<double> snapshot(int k) {
    return {v_.data() + static_cast<size_t>(k) * dim_, static_cast<size_t>(dim_)};
  }
  std::span<const double> snapshot(int k) const {
    return {v_.data() + static_cast<size_t>(k) * dim_, static_cast<size_t>(dim_)};
  }
  int samples() const { return samples_; }
  int dim() const { return static_cast<int>(dim_); }
  bool empty() const { return samples_ == 0; }
  const std::vector<double>& raw() const { return v_; }

 private:
  int samples_ = 0;
  size_t dim_ = 0;
  std::vector<double> v_;
};

/// Per-edge adapted weights u_e(t_k), row-major (sample, edge), interpreted
/// as piecewise-linear between grid nodes. Admissible values lie in
/// [0, w^o_e].
class ControlTrajectory {
 public:
  ControlTrajectory() = default;
  ControlTrajectory(int samples, int edge_count)
      : samples_(samples),
        dim_(edge_count),
        v_(static_cast<size_t>(samples) * static_cast<size_t>(edge_count), 0.0) {}

  static ControlTrajectory original_weights(const Network& net, const TimeGrid& grid);
  static ControlTrajectory zero(const Network& net, const TimeGrid& grid);

  double& at(int k, int e) { return v_[static_cast<size_t>(k) * dim_ + e]; }
  double at(int k, int e) const { return v_[static_cast<size_t>(k) * dim_ + e]; }
  std::span<double> snapshot(int k) {
    return {v_.data() + static_cast<size_t>(k) * dim_, static_cast<size_t>(dim_)};
  }
  std::span<const double> snapshot(int k) const {
    return {v_.data() + static_cast<size_t>(k) * dim_, static_cast<size_t>(dim_)};
  }
  int samples() const { return samples_; }
  int dim() const { return static_cast<int>(dim_); }
  bool empty() const { return samples_ == 0; }
  const std::vector<double>& raw() const { return v_; }

  /// Throws if any value leaves [0, w^o] by more than `tol`.
  void check_admissible(const Network& net, double tol = 1e-12) const;

 private:
  int samples_ = 0;
  size_t dim_ = 0;
  std::vector<double> v_;
};

/// Raised when the forward or backward integration produces NaN or leaves the
/// admissible region by more than floating-point drift.
struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what, int step_)
      : std::runtime_error(what), step(step_) {}
  int step;
};

/// dx_i/dt = (1 - x_i) * sum_{j in N_i^out} u_ij beta_j x_j - sigma_i x_i.
/// `u` is the per-edge weight snapshot in the network's edge order.
std::vector<double> mean_field_rhs(const Network& net, std::span<const double> x,
                                   std::span<const double> u);

/// Fixed-step classical Runge-Kutta over the grid; controls are linearly
/// interpolated at half-steps. Entries drifting past [0, 1] by less than
/// 1e-12 are clamped; larger violations raise IntegrationError.
StateTrajectory integrate_forward(const Network& net, const TimeGrid& grid,
                                  std::span<const double> x0,
                                  const ControlTrajectory& u);

struct MarkovEstimate {
  StateTrajectory mean;       // empirical P(X_i(t_k) = 1)
  StateTrajectory std_error;  // sqrt(p (1 - p) / runs)
  int runs = 0;
};

/// Exact event-driven simulation of the stochastic transition model:
/// a susceptible node i becomes infected at rate sum_j u_ij(t) beta_j X_j(t),
/// an infected node recovers at rate sigma_i. Controls are refreshed at grid
/// nodes; state-dependent rates are refreshed at every event. Initial states
/// are drawn independently Bernoulli(x0_i); each run derives its stream from
/// (seed, run index).
MarkovEstimate simulate_markov(const Network& net, const TimeGrid& grid,
                               std::span<const double> x0,
                               const ControlTrajectory& u, int runs,
                               std::uint64_t seed);

}  // namespace dvr
