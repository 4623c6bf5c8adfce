#include "dvr/netgraph.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dvr {

namespace {

std::int64_t pair_key(NodeId i, NodeId j) {
  return (static_cast<std::int64_t>(i) << 32) | static_cast<std::uint32_t>(j);
}

}  // namespace

Network::Network(int node_count, std::vector<Edge> edges,
                 std::vector<double> beta, std::vector<double> sigma,
                 std::vector<double> weight_cap)
    : n_(node_count),
      edges_(std::move(edges)),
      beta_(std::move(beta)),
      sigma_(std::move(sigma)),
      weight_cap_(std::move(weight_cap)) {
  if (n_ <= 0) throw std::invalid_argument("network: node count must be positive");
  if (beta_.size() != static_cast<size_t>(n_) || sigma_.size() != static_cast<size_t>(n_))
    throw std::invalid_argument("network: beta/sigma size must equal node count");
  if (!weight_cap_.empty() && weight_cap_.size() != edges_.size())
    throw std::invalid_argument("network: weight_cap size must equal edge count");
  for (int i = 0; i < n_; ++i) {
    if (!(beta_[static_cast<size_t>(i)] >= 0.0))
      throw std::invalid_argument("network: beta must be >= 0");
    if (!(sigma_[static_cast<size_t>(i)] > 0.0))
      throw std::invalid_argument("network: sigma must be > 0");
  }
  out_edge_ids_.resize(static_cast<size_t>(n_));
  in_edge_ids_.resize(static_cast<size_t>(n_));
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<size_t>(e)];
    if (ed.from < 0 || ed.from >= n_ || ed.to < 0 || ed.to >= n_)
      throw std::invalid_argument("network: edge endpoint out of range");
    if (ed.from == ed.to)
      throw std::invalid_argument("network: self-loops are not allowed");
    if (!(ed.weight > 0.0))
      throw std::invalid_argument("network: edge weights must be > 0");
    if (!weight_cap_.empty() && !(weight_cap_[static_cast<size_t>(e)] > 0.0))
      throw std::invalid_argument("network: weight caps must be > 0");
    if (!edge_lookup_.emplace(pair_key(ed.from, ed.to), e).second)
      throw std::invalid_argument("network: duplicate edge");
    out_edge_ids_[static_cast<size_t>(ed.from)].push_back(e);
    in_edge_ids_[static_cast<size_t>(ed.to)].push_back(e);
  }
  for (auto& ids : out_edge_ids_)
    std::sort(ids.begin(), ids.end(),
              [&](int a, int b) { return edges_[static_cast<size_t>(a)].to < edges_[static_cast<size_t>(b)].to; });
  for (auto& ids : in_edge_ids_)
    std::sort(ids.begin(), ids.end(),
              [&](int a, int b) { return edges_[static_cast<size_t>(a)].from < edges_[static_cast<size_t>(b)].from; });
}

std::span<const int> Network::out_edges(NodeId i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("out_edges: node index out of range");
  return out_edge_ids_[static_cast<size_t>(i)];
}

std::span<const int> Network::in_edges(NodeId i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("in_edges: node index out of range");
  return in_edge_ids_[static_cast<size_t>(i)];
}

std::optional<int> Network::edge_index(NodeId i, NodeId j) const {
  auto it = edge_lookup_.find(pair_key(i, j));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> out_neighbors(const Network& net, NodeId i) {
  std::vector<NodeId> out;
  for (int e : net.out_edges(i)) out.push_back(net.edge(e).to);
  return out;  // already sorted by construction
}

std::vector<NodeId> reachable_from(const Network& net, NodeId i) {
  if (i < 0 || i >= net.node_count())
    throw std::out_of_range("reachable_from: node index out of range");
  std::vector<char> seen(static_cast<size_t>(net.node_count()), 0);
  std::deque<NodeId> queue{i};
  seen[static_cast<size_t>(i)] = 1;
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    // walk edges (u, v) backwards: u can reach i through v
    for (int e : net.in_edges(v)) {
      NodeId u = net.edge(e).from;
      if (!seen[static_cast<size_t>(u)]) {
        seen[static_cast<size_t>(u)] = 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<NodeId> result;
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (seen[static_cast<size_t>(v)]) result.push_back(v);
  return result;
}

std::vector<std::vector<NodeId>> reachable_sets(const Network& net) {
  std::vector<std::vector<NodeId>> sets;
  sets.reserve(static_cast<size_t>(net.node_count()));
  for (NodeId i = 0; i < net.node_count(); ++i) sets.push_back(reachable_from(net, i));
  return sets;
}

Network generate_barabasi_albert(int n, int m, std::uint64_t seed, double beta,
                                 double sigma) {
  if (m < 1) throw std::invalid_argument("generate_barabasi_albert: m must be >= 1");
  if (n <= m) throw std::invalid_argument("generate_barabasi_albert: n must exceed m");

  std::mt19937_64 rng(seed);
  std::vector<std::pair<NodeId, NodeId>> links;  // undirected, creation order
  // Each node id appears once per incident link; sampling from this list is
  // sampling proportional to degree.
  std::vector<NodeId> repeated;

  const int seed_nodes = std::min(m + 1, n);
  for (NodeId a = 0; a < seed_nodes; ++a)
    for (NodeId b = a + 1; b < seed_nodes; ++b) {
      links.emplace_back(a, b);
      repeated.push_back(a);
      repeated.push_back(b);
    }

  std::vector<char> attached(static_cast<size_t>(n), 0);
  for (NodeId v = seed_nodes; v < n; ++v) {
    std::vector<NodeId> targets;
    while (static_cast<int>(targets.size()) < m) {
      std::uniform_int_distribution<size_t> pick(0, repeated.size() - 1);
      NodeId candidate = repeated[pick(rng)];
      if (!attached[static_cast<size_t>(candidate)]) {
        attached[static_cast<size_t>(candidate)] = 1;
        targets.push_back(candidate);
      }
    }
    for (NodeId t : targets) {
      attached[static_cast<size_t>(t)] = 0;
      links.emplace_back(v, t);
      repeated.push_back(v);
      repeated.push_back(t);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(2 * links.size());
  for (auto [a, b] : links) {
    edges.push_back({a, b, 1.0});
    edges.push_back({b, a, 1.0});
  }
  return Network(n, std::move(edges), std::vector<double>(static_cast<size_t>(n), beta),
                 std::vector<double>(static_cast<size_t>(n), sigma));
}

double largest_real_eigenvalue(const Network& net) {
  const int n = net.node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : net.edges()) a(e.from, e.to) = e.weight * net.beta(e.to);
  for (int i = 0; i < n; ++i) a(i, i) -= net.sigma(i);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  return solver.eigenvalues().real().maxCoeff();
}

DegreeStats degree_stats(const Network& net) {
  DegreeStats stats;
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const int out = static_cast<int>(net.out_edges(i).size());
    stats.mean_out_degree += out;
    stats.mean_in_degree += static_cast<double>(net.in_edges(i).size());
    stats.max_out_degree = std::max(stats.max_out_degree, out);
  }
  stats.mean_out_degree /= net.node_count();
  stats.mean_in_degree /= net.node_count();
  return stats;
}

Network load_network(const std::string& edge_path, const std::string& node_path) {
  std::ifstream nodes(node_path);
  if (!nodes) throw std::runtime_error("cannot open node file: " + node_path);
  std::vector<double> beta, sigma;
  std::vector<NodeId> ids;
  std::string line;
  while (std::getline(nodes, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    NodeId i;
    double b, s;
    if (!(ss >> i >> b >> s))
      throw std::runtime_error("malformed node line in " + node_path + ": " + line);
    ids.push_back(i);
    beta.push_back(b);
    sigma.push_back(s);
  }
  const int n = static_cast<int>(ids.size());
  std::vector<double> beta_by_id(static_cast<size_t>(n), -1.0);
  std::vector<double> sigma_by_id(static_cast<size_t>(n), -1.0);
  for (size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] < 0 || ids[k] >= n)
      throw std::runtime_error("node file must list ids 0..N-1 exactly once");
    beta_by_id[static_cast<size_t>(ids[k])] = beta[k];
    sigma_by_id[static_cast<size_t>(ids[k])] = sigma[k];
  }
  for (double s : sigma_by_id)
    if (s < 0.0) throw std::runtime_error("node file must list ids 0..N-1 exactly once");

  std::ifstream edges_in(edge_path);
  if (!edges_in) throw std::runtime_error("cannot open edge file: " + edge_path);
  std::vector<Edge> edges;
  while (std::getline(edges_in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    Edge e;
    if (!(ss >> e.from >> e.to >> e.weight))
      throw std::runtime_error("malformed edge line in " + edge_path + ": " + line);
    edges.push_back(e);
  }
  return Network(n, std::move(edges), std::move(beta_by_id), std::move(sigma_by_id));
}

void save_network(const Network& net, const std::string& edge_path,
                  const std::string& node_path) {
  std::ofstream edges_out(edge_path);
  if (!edges_out) throw std::runtime_error("cannot write edge file: " + edge_path);
  edges_out.precision(17);
  for (const Edge& e : net.edges())
    edges_out << e.from << ' ' << e.to << ' ' << e.weight << '\n';
  std::ofstream nodes_out(node_path);
  if (!nodes_out) throw std::runtime_error("cannot write node file: " + node_path);
  nodes_out.precision(17);
  for (NodeId i = 0; i < net.node_count(); ++i)
    nodes_out << i << ' ' << net.beta(i) << ' ' << net.sigma(i) << '\n';
}

}  // namespace dvr
