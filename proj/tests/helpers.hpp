#pragma once

#include <random>
#include <vector>

#include "dvr/costmodel.hpp"
#include "dvr/netgraph.hpp"

namespace dvr::testing {

inline Network two_node_network(double beta = 0.04, double sigma = 0.1) {
  return Network(2, {{0, 1, 1.0}, {1, 0, 1.0}}, {beta, beta}, {sigma, sigma});
}

// 5-node directed acyclic graph: 0->1, 0->2, 0->3, 1->2, 3->2, 3->4.
// Node 0 has no in-edges; nodes 2 and 4 have no out-edges.
inline Network five_node_dag(double beta = 0.04, double sigma = 0.1) {
  return Network(5,
                 {{0, 1, 1.0},
                  {0, 2, 1.0},
                  {0, 3, 1.0},
                  {1, 2, 1.0},
                  {3, 2, 1.0},
                  {3, 4, 1.0}},
                 std::vector<double>(5, beta), std::vector<double>(5, sigma));
}

inline Network isolated_nodes(int n, double sigma = 0.1) {
  return Network(n, {}, std::vector<double>(static_cast<size_t>(n), 0.04),
                 std::vector<double>(static_cast<size_t>(n), sigma));
}

// Erdos-Renyi style directed graph with edge probability p, unit weights.
inline Network random_directed_network(int n, double p, std::uint64_t seed,
                                       double beta = 0.04, double sigma = 0.1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && unif(rng) < p) edges.push_back({i, j, 1.0});
  return Network(n, std::move(edges), std::vector<double>(static_cast<size_t>(n), beta),
                 std::vector<double>(static_cast<size_t>(n), sigma));
}

inline CostModel linear_quadratic_costs(double alpha = 1.0, double d = 0.2) {
  return CostModel{InfectionCost::linear(alpha), WeightCost::quadratic(d)};
}

inline std::vector<double> uniform_x0(int n, double value = 0.16) {
  return std::vector<double>(static_cast<size_t>(n), value);
}

}  // namespace dvr::testing
