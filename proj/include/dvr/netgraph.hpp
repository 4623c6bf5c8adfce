#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dvr {

using NodeId = int;

/// Directed weighted edge. The direction follows the acquisition convention:
/// an edge (i, j) means node i acquires infection pressure from node j at
/// rate u_ij * beta_j * x_j, so w_ij multiplies x_j in node i's dynamics.
struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  double weight = 1.0;  // original weight w^o, > 0
};

struct DegreeStats {
  double mean_out_degree = 0.0;
  double mean_in_degree = 0.0;
  int max_out_degree = 0;
};

/// Immutable directed weighted graph with per-node infection rate beta and
/// curing rate sigma. No self-loops, unique (from, to) pairs, positive
/// weights. Optional per-edge weight caps are stored but never consulted by
/// the solvers, which confine controls to [0, w^o].
class Network {
 public:
  Network(int node_count, std::vector<Edge> edges, std::vector<double> beta,
          std::vector<double> sigma, std::vector<double> weight_cap = {});

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }

  double beta(NodeId i) const { return beta_[static_cast<size_t>(i)]; }
  double sigma(NodeId i) const { return sigma_[static_cast<size_t>(i)]; }
  const std::vector<double>& beta() const { return beta_; }
  const std::vector<double>& sigma() const { return sigma_; }

  bool has_weight_caps() const { return !weight_cap_.empty(); }
  double weight_cap(int e) const { return weight_cap_[static_cast<size_t>(e)]; }

  /// Edge indices leaving / entering node i, sorted by the opposite endpoint.
  std::span<const int> out_edges(NodeId i) const;
  std::span<const int> in_edges(NodeId i) const;

  std::optional<int> edge_index(NodeId i, NodeId j) const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<double> beta_;
  std::vector<double> sigma_;
  std::vector<double> weight_cap_;
  std::vector<std::vector<int>> out_edge_ids_;
  std::vector<std::vector<int>> in_edge_ids_;
  std::unordered_map<std::int64_t, int> edge_lookup_;
};

/// { j : (i, j) in E }, sorted ascending.
std::vector<NodeId> out_neighbors(const Network& net, NodeId i);

/// R_i: every j with a directed path j ~> i, plus i itself. Computed by
/// breadth-first traversal from i along reversed edges. Sorted ascending.
std::vector<NodeId> reachable_from(const Network& net, NodeId i);

/// All N reachability sets at once.
std::vector<std::vector<NodeId>> reachable_sets(const Network& net);

/// Bi-directional scale-free graph: complete seed graph on m + 1 nodes, then
/// each new node attaches m undirected links by preferential attachment
/// (no multi-edges); every undirected link becomes two directed edges of
/// weight 1. Pure function of (n, m, seed).
Network generate_barabasi_albert(int n, int m, std::uint64_t seed,
                                 double beta = 0.04, double sigma = 0.1);

/// Largest real part over the spectrum of W^o * diag(beta) - diag(sigma).
/// Positive values signal the outbreak regime.
double largest_real_eigenvalue(const Network& net);

DegreeStats degree_stats(const Network& net);

/// Edge-list file: one `i j w` line per edge, 0-based ids, decimal weight.
/// Node-parameter file: one `i beta sigma` line per node.
Network load_network(const std::string& edge_path, const std::string& node_path);
void save_network(const Network& net, const std::string& edge_path,
                  const std::string& node_path);

}  // namespace dvr
