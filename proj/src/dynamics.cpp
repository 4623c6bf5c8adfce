#include "dvr/dynamics.hpp"

#include <cmath>
#include <random>
#include <string>

namespace dvr {

namespace {

constexpr double kDriftTol = 1e-12;

void rhs_into(const Network& net, std::span<const double> x,
              std::span<const double> u, std::span<double> dx) {
  const int n = net.node_count();
  for (int i = 0; i < n; ++i) dx[static_cast<size_t>(i)] = -net.sigma(i) * x[static_cast<size_t>(i)];
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    dx[static_cast<size_t>(ed.from)] += (1.0 - x[static_cast<size_t>(ed.from)]) *
                                        u[static_cast<size_t>(e)] * net.beta(ed.to) *
                                        x[static_cast<size_t>(ed.to)];
  }
}

void axpy(std::span<double> out, std::span<const double> x, double a,
          std::span<const double> y) {
  for (size_t i = 0; i < out.size(); ++i) out[i] = x[i] + a * y[i];
}

}  // namespace

ControlTrajectory ControlTrajectory::original_weights(const Network& net,
                                                      const TimeGrid& grid) {
  ControlTrajectory u(grid.samples(), net.edge_count());
  for (int k = 0; k < grid.samples(); ++k)
    for (int e = 0; e < net.edge_count(); ++e) u.at(k, e) = net.edge(e).weight;
  return u;
}

ControlTrajectory ControlTrajectory::zero(const Network& net, const TimeGrid& grid) {
  return ControlTrajectory(grid.samples(), net.edge_count());
}

void ControlTrajectory::check_admissible(const Network& net, double tol) const {
  if (dim_ != static_cast<size_t>(net.edge_count()))
    throw std::invalid_argument("control: edge dimension mismatch");
  for (int k = 0; k < samples(); ++k)
    for (int e = 0; e < dim(); ++e) {
      const double v = at(k, e);
      if (!(v >= -tol && v <= net.edge(e).weight + tol))
        throw std::invalid_argument("control: value outside [0, w^o] at sample " +
                                    std::to_string(k));
    }
}

std::vector<double> mean_field_rhs(const Network& net, std::span<const double> x,
                                   std::span<const double> u) {
  if (x.size() != static_cast<size_t>(net.node_count()))
    throw std::invalid_argument("mean_field_rhs: state dimension mismatch");
  if (u.size() != static_cast<size_t>(net.edge_count()))
    throw std::invalid_argument("mean_field_rhs: control dimension mismatch");
  std::vector<double> dx(x.size());
  rhs_into(net, x, u, dx);
  return dx;
}

StateTrajectory integrate_forward(const Network& net, const TimeGrid& grid,
                                  std::span<const double> x0,
                                  const ControlTrajectory& u) {
  const int n = net.node_count();
  if (x0.size() != static_cast<size_t>(n))
    throw std::invalid_argument("integrate_forward: x0 dimension mismatch");
  if (u.samples() != grid.samples() || u.dim() != net.edge_count())
    throw std::invalid_argument("integrate_forward: control/grid mismatch");
  for (double v : x0)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("integrate_forward: x0 outside [0, 1]");

  StateTrajectory x(grid.samples(), n);
  for (int i = 0; i < n; ++i) x.at(0, i) = x0[static_cast<size_t>(i)];

  const double h = grid.dt();
  const size_t edim = static_cast<size_t>(net.edge_count());
  std::vector<double> umid(edim), k1(static_cast<size_t>(n)), k2(k1), k3(k1), k4(k1),
      tmp(k1);

  for (int k = 0; k < grid.steps; ++k) {
    auto xk = x.snapshot(k);
    auto u0 = u.snapshot(k);
    auto u1 = u.snapshot(k + 1);
    for (size_t e = 0; e < edim; ++e) umid[e] = 0.5 * (u0[e] + u1[e]);

    rhs_into(net, xk, u0, k1);
    axpy(tmp, xk, 0.5 * h, k1);
    rhs_into(net, tmp, umid, k2);
    axpy(tmp, xk, 0.5 * h, k2);
    rhs_into(net, tmp, umid, k3);
    axpy(tmp, xk, h, k3);
    rhs_into(net, tmp, u1, k4);

    auto xn = x.snapshot(k + 1);
    for (int i = 0; i < n; ++i) {
      const size_t si = static_cast<size_t>(i);
      double v = xk[si] + h / 6.0 * (k1[si] + 2.0 * k2[si] + 2.0 * k3[si] + k4[si]);
      if (std::isnan(v))
        throw IntegrationError("integrate_forward: NaN at step " + std::to_string(k + 1),
                               k + 1);
      if (v < 0.0) {
        if (v < -kDriftTol)
          throw IntegrationError(
              "integrate_forward: state left [0,1] at step " + std::to_string(k + 1),
              k + 1);
        v = 0.0;
      } else if (v > 1.0) {
        if (v > 1.0 + kDriftTol)
          throw IntegrationError(
              "integrate_forward: state left [0,1] at step " + std::to_string(k + 1),
              k + 1);
        v = 1.0;
      }
      xn[si] = v;
    }
  }
  return x;
}

MarkovEstimate simulate_markov(const Network& net, const TimeGrid& grid,
                               std::span<const double> x0,
                               const ControlTrajectory& u, int runs,
                               std::uint64_t seed) {
  const int n = net.node_count();
  if (x0.size() != static_cast<size_t>(n))
    throw std::invalid_argument("simulate_markov: x0 dimension mismatch");
  if (runs < 1) throw std::invalid_argument("simulate_markov: runs must be >= 1");
  if (u.samples() != grid.samples() || u.dim() != net.edge_count())
    throw std::invalid_argument("simulate_markov: control/grid mismatch");
  for (double v : x0)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("simulate_markov: x0 outside [0, 1]");

  std::vector<std::int64_t> counts(static_cast<size_t>(grid.samples()) *
                                       static_cast<size_t>(n),
                                   0);
  std::vector<char> infected(static_cast<size_t>(n));
  std::vector<double> rate(static_cast<size_t>(n));

  auto node_rate = [&](NodeId i, std::span<const double> uk) {
    if (infected[static_cast<size_t>(i)]) return net.sigma(i);
    double r = 0.0;
    for (int e : net.out_edges(i)) {
      const Edge& ed = net.edge(e);
      if (infected[static_cast<size_t>(ed.to)])
        r += uk[static_cast<size_t>(e)] * net.beta(ed.to);
    }
    return r;
  };

  for (int run = 0; run < runs; ++run) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(run)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (int i = 0; i < n; ++i)
      infected[static_cast<size_t>(i)] = unif(rng) < x0[static_cast<size_t>(i)] ? 1 : 0;
    for (int i = 0; i < n; ++i)
      counts[static_cast<size_t>(i)] += infected[static_cast<size_t>(i)];

    for (int k = 0; k < grid.steps; ++k) {
      auto uk = u.snapshot(k);  // controls frozen over [t_k, t_{k+1})
      double t = grid.time(k);
      const double t_next = grid.time(k + 1);
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        rate[static_cast<size_t>(i)] = node_rate(i, uk);
        total += rate[static_cast<size_t>(i)];
      }
      while (true) {
        if (total <= 0.0) break;
        const double wait = -std::log(1.0 - unif(rng)) / total;
        if (t + wait >= t_next) break;
        t += wait;
        double mark = unif(rng) * total;
        int chosen = n - 1;
        for (int i = 0; i < n; ++i) {
          mark -= rate[static_cast<size_t>(i)];
          if (mark <= 0.0) {
            chosen = i;
            break;
          }
        }
        infected[static_cast<size_t>(chosen)] ^= 1;
        // a flip changes the chosen node's rate and its in-neighbors' rates
        total = 0.0;
        for (int i = 0; i < n; ++i) {
          rate[static_cast<size_t>(i)] = node_rate(i, uk);
          total += rate[static_cast<size_t>(i)];
        }
      }
      auto slot = counts.begin() + static_cast<size_t>(k + 1) * static_cast<size_t>(n);
      for (int i = 0; i < n; ++i) slot[i] += infected[static_cast<size_t>(i)];
    }
  }

  MarkovEstimate est;
  est.runs = runs;
  est.mean = StateTrajectory(grid.samples(), n);
  est.std_error = StateTrajectory(grid.samples(), n);
  for (int k = 0; k < grid.samples(); ++k)
    for (int i = 0; i < n; ++i) {
      const double p =
          static_cast<double>(counts[static_cast<size_t>(k) * static_cast<size_t>(n) +
                                     static_cast<size_t>(i)]) /
          runs;
      est.mean.at(k, i) = p;
      est.std_error.at(k, i) = std::sqrt(p * (1.0 - p) / runs);
    }
  return est;
}

}  // namespace dvr
