#include "dvr/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace dvr {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ScenarioError(message); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// line/column of a byte offset, for parse diagnostics
std::pair<int, int> line_of(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double number_at(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

int integer_at(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) fail("field '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

SolveMode solve_mode_from_name(const std::string& name) {
  if (name == "game") return SolveMode::Game;
  if (name == "penalty-full") return SolveMode::PenaltyFull;
  if (name == "penalty-reach") return SolveMode::PenaltyReach;
  if (name == "central") return SolveMode::Central;
  fail("unknown mode '" + name + "'");
}

std::string solve_mode_name(SolveMode mode) {
  switch (mode) {
    case SolveMode::Game: return "game";
    case SolveMode::PenaltyFull: return "penalty-full";
    case SolveMode::PenaltyReach: return "penalty-reach";
    case SolveMode::Central: return "central";
  }
  return "unknown";
}

Scenario parse_scenario_text(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_of(text, e.byte);
    fail("scenario parse error at line " + std::to_string(line) + ", column " +
         std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) fail("scenario must be a JSON object");

  Scenario sc;
  if (!doc.contains("network")) fail("missing 'network' section");
  const json& net = doc.at("network");
  int sources = 0;
  if (net.contains("generate")) {
    ++sources;
    const json& g = net.at("generate");
    GenerateSpec spec;
    spec.n = integer_at(g, "n", spec.n);
    spec.m = integer_at(g, "m", spec.m);
    if (g.contains("seed")) spec.seed = g.at("seed").get<std::uint64_t>();
    sc.generate = spec;
  }
  if (net.contains("edge_file") || net.contains("node_file")) {
    ++sources;
    if (!net.contains("edge_file") || !net.contains("node_file"))
      fail("'network' needs both edge_file and node_file");
    sc.files = {resolve(base_dir, net.at("edge_file").get<std::string>()),
                resolve(base_dir, net.at("node_file").get<std::string>())};
  }
  if (net.contains("inline")) {
    ++sources;
    const json& inl = net.at("inline");
    const int n = integer_at(inl, "n", 0);
    if (n <= 0) fail("'network.inline.n' must be positive");
    if (!inl.contains("edges") || !inl.at("edges").is_array())
      fail("'network.inline.edges' must be an array of [i, j, w]");
    std::vector<Edge> edges;
    for (const json& row : inl.at("edges")) {
      if (!row.is_array() || row.size() != 3) fail("inline edge must be [i, j, w]");
      edges.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
    }
    sc.inline_edges = {n, std::move(edges)};
  }
  if (sources != 1) fail("'network' must specify exactly one of generate/files/inline");

  sc.beta = number_at(doc, "beta", sc.beta);
  sc.sigma = number_at(doc, "sigma", sc.sigma);

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    sc.t_final = number_at(g, "t_final", sc.t_final);
    sc.steps = integer_at(g, "steps", sc.steps);
  }

  if (doc.contains("x0")) {
    const json& x = doc.at("x0");
    if (x.is_number()) {
      sc.x0_uniform = x.get<double>();
    } else if (x.is_object()) {
      if (x.contains("uniform")) sc.x0_uniform = x.at("uniform").get<double>();
      if (x.contains("values")) sc.x0_values = x.at("values").get<std::vector<double>>();
      if (x.contains("file")) sc.x0_file = resolve(base_dir, x.at("file").get<std::string>());
    } else {
      fail("'x0' must be a number or an object");
    }
  }

  if (doc.contains("costs")) {
    const json& c = doc.at("costs");
    sc.alpha = number_at(c, "alpha", sc.alpha);
    sc.d = number_at(c, "d", sc.d);
    if (c.contains("alpha_per_node"))
      sc.alpha_per_node = c.at("alpha_per_node").get<std::vector<double>>();
    if (c.contains("d_per_edge"))
      sc.d_per_edge = c.at("d_per_edge").get<std::vector<double>>();
  }

  if (doc.contains("mode")) {
    sc.mode = doc.at("mode").get<std::string>();
    if (sc.mode != "baseline") solve_mode_from_name(sc.mode);  // validates
  }

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    sc.epsilon = number_at(s, "epsilon", sc.epsilon);
    sc.max_iters = integer_at(s, "max_iters", sc.max_iters);
    sc.damping = number_at(s, "damping", sc.damping);
  }

  if (doc.contains("alpha_scan"))
    sc.alpha_scan = doc.at("alpha_scan").get<std::vector<double>>();

  if (doc.contains("verify")) {
    const json& v = doc.at("verify");
    sc.verify_probes = integer_at(v, "probes", sc.verify_probes);
    sc.verify_probe_delta = number_at(v, "probe_delta", sc.verify_probe_delta);
    sc.verify_adjoint_delta = number_at(v, "adjoint_delta", sc.verify_adjoint_delta);
    if (v.contains("seed")) sc.verify_seed = v.at("seed").get<std::uint64_t>();
  }

  // surface obvious precondition violations as config errors
  if (!(sc.t_final > 0.0) || sc.steps < 2) fail("grid parameters out of range");
  if (!(sc.epsilon > 0.0) || !(sc.damping > 0.0 && sc.damping <= 1.0) || sc.max_iters < 1)
    fail("sweep parameters out of range");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  const std::string text = read_file(path);
  return parse_scenario_text(text,
                             std::filesystem::path(path).parent_path().string());
}

Network Scenario::build_network() const {
  if (generate)
    return generate_barabasi_albert(generate->n, generate->m, generate->seed, beta, sigma);
  if (files) {
    try {
      return load_network(files->first, files->second);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (inline_edges) {
    const auto& [n, edges] = *inline_edges;
    try {
      return Network(n, edges, std::vector<double>(static_cast<size_t>(n), beta),
                     std::vector<double>(static_cast<size_t>(n), sigma));
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  fail("scenario has no network source");
}

std::vector<double> Scenario::build_x0(int n) const {
  if (x0_values) {
    if (static_cast<int>(x0_values->size()) != n)
      fail("x0 values do not match the node count");
    return *x0_values;
  }
  if (x0_file) {
    std::ifstream in(*x0_file);
    if (!in) fail("cannot open x0 file: " + *x0_file);
    std::vector<double> x0(static_cast<size_t>(n), -1.0);
    int i;
    double v;
    while (in >> i >> v) {
      if (i < 0 || i >= n) fail("x0 file: node id out of range");
      x0[static_cast<size_t>(i)] = v;
    }
    for (double v2 : x0)
      if (v2 < 0.0) fail("x0 file must cover ids 0..N-1");
    return x0;
  }
  return std::vector<double>(static_cast<size_t>(n), x0_uniform);
}

CostModel Scenario::build_costs(const Network& net,
                                std::optional<double> alpha_override) const {
  auto infection = [&] {
    if (alpha_override) return InfectionCost::linear(*alpha_override);
    if (alpha_per_node) {
      if (static_cast<int>(alpha_per_node->size()) != net.node_count())
        fail("alpha_per_node does not match the node count");
      return InfectionCost::linear(*alpha_per_node);
    }
    return InfectionCost::linear(alpha);
  }();
  auto weight = [&] {
    if (d_per_edge) {
      if (static_cast<int>(d_per_edge->size()) != net.edge_count())
        fail("d_per_edge does not match the edge count");
      return WeightCost::quadratic(*d_per_edge);
    }
    return WeightCost::quadratic(d);
  }();
  return CostModel{std::move(infection), std::move(weight)};
}

SweepConfig Scenario::build_sweep_config() const {
  SweepConfig cfg;
  cfg.epsilon = epsilon;
  cfg.max_iters = max_iters;
  cfg.damping = damping;
  return cfg;
}

Scenario two_node_scenario() {
  Scenario sc;
  sc.inline_edges = {2, {{0, 1, 1.0}, {1, 0, 1.0}}};
  return sc;
}

Scenario five_node_dag_scenario() {
  Scenario sc;
  sc.inline_edges = {5,
                     {{0, 1, 1.0},
                      {0, 2, 1.0},
                      {0, 3, 1.0},
                      {1, 2, 1.0},
                      {3, 2, 1.0},
                      {3, 4, 1.0}}};
  return sc;
}

Scenario ba_scenario(int n, int m, std::uint64_t seed) {
  Scenario sc;
  sc.generate = GenerateSpec{n, m, seed};
  return sc;
}

void atomic_write_text(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void write_states_csv(const std::string& path, const TimeGrid& grid,
                      const StateTrajectory& x) {
  std::ostringstream out;
  out << "t";
  for (int i = 0; i < x.dim(); ++i) out << ",x_" << i;
  out << '\n';
  for (int k = 0; k < x.samples(); ++k) {
    out << format_double(grid.time(k));
    for (int i = 0; i < x.dim(); ++i) out << ',' << format_double(x.at(k, i));
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

void write_controls_csv(const std::string& path, const TimeGrid& grid,
                        const Network& net, const ControlTrajectory& u) {
  std::ostringstream out;
  out << "t";
  for (int e = 0; e < net.edge_count(); ++e)
    out << ",u_" << net.edge(e).from << '_' << net.edge(e).to;
  out << '\n';
  for (int k = 0; k < u.samples(); ++k) {
    out << format_double(grid.time(k));
    for (int e = 0; e < u.dim(); ++e) out << ',' << format_double(u.at(k, e));
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

void write_costates_csv(const std::string& path, const TimeGrid& grid,
                        const CostateTrajectory& p) {
  std::ostringstream out;
  out << "t";
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.dim(); ++j) out << ",p_" << i << '_' << j;
  out << '\n';
  for (int k = 0; k < p.samples(); ++k) {
    out << format_double(grid.time(k));
    for (int i = 0; i < p.rows(); ++i)
      for (int j = 0; j < p.dim(); ++j) out << ',' << format_double(p.p(k, i, j));
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

namespace {

std::vector<std::vector<double>> read_csv_rows(const std::string& path, int* columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  *columns = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(static_cast<size_t>(*columns));
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<int>(row.size()) != *columns)
      throw std::runtime_error("ragged csv row in " + path);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

StateTrajectory read_states_csv(const std::string& path) {
  int columns = 0;
  const auto rows = read_csv_rows(path, &columns);
  StateTrajectory x(static_cast<int>(rows.size()), columns - 1);
  for (size_t k = 0; k < rows.size(); ++k)
    for (int i = 0; i + 1 < columns; ++i)
      x.at(static_cast<int>(k), i) = rows[k][static_cast<size_t>(i) + 1];
  return x;
}

ControlTrajectory read_controls_csv(const std::string& path) {
  int columns = 0;
  const auto rows = read_csv_rows(path, &columns);
  ControlTrajectory u(static_cast<int>(rows.size()), columns - 1);
  for (size_t k = 0; k < rows.size(); ++k)
    for (int e = 0; e + 1 < columns; ++e)
      u.at(static_cast<int>(k), e) = rows[k][static_cast<size_t>(e) + 1];
  return u;
}

namespace {

std::string status_name(SweepStatus status) {
  switch (status) {
    case SweepStatus::Converged: return "converged";
    case SweepStatus::MaxIterations: return "max_iterations";
    case SweepStatus::Diverged: return "diverged";
  }
  return "unknown";
}

}  // namespace

void write_summary(const std::string& path, const Network& net, const TimeGrid& grid,
                   const std::string& scheme, const SolveReport& report) {
  std::ostringstream out;
  out << "scheme = " << scheme << '\n';
  out << "status = " << status_name(report.status) << '\n';
  out << "converged = " << (report.converged ? 1 : 0) << '\n';
  out << "iterations = " << report.iterations << '\n';
  out << "final_residual = " << format_double(report.final_residual) << '\n';
  out << "nodes = " << net.node_count() << '\n';
  out << "edges = " << net.edge_count() << '\n';
  out << "grid_t_final = " << format_double(grid.t_final) << '\n';
  out << "grid_steps = " << grid.steps << '\n';
  out << "social_cost = " << format_double(report.social_cost) << '\n';
  for (size_t i = 0; i < report.player_costs.size(); ++i)
    out << "player_cost_" << i << " = " << format_double(report.player_costs[i]) << '\n';
  atomic_write_text(path, out.str());
}

std::map<std::string, std::string> parse_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

namespace {

struct PreparedScenario {
  Network net;
  TimeGrid grid;
  std::vector<double> x0;
  CostModel costs;
};

PreparedScenario prepare(const Scenario& scenario) {
  Network net = scenario.build_network();
  TimeGrid grid = scenario.build_grid();
  std::vector<double> x0 = scenario.build_x0(net.node_count());
  CostModel costs = scenario.build_costs(net);
  return {std::move(net), grid, std::move(x0), std::move(costs)};
}

SolveReport solve_scheme(const PreparedScenario& ps, const std::string& scheme,
                         const SweepConfig& cfg,
                         std::optional<double> alpha_override = std::nullopt,
                         const Scenario* scenario = nullptr) {
  const CostModel costs = alpha_override && scenario
                              ? scenario->build_costs(ps.net, alpha_override)
                              : ps.costs;
  if (scheme == "baseline")
    return no_adaptation_baseline(ps.net, ps.grid, ps.x0, costs);
  return dvr_solve(ps.net, ps.grid, ps.x0, costs, solve_mode_from_name(scheme), cfg);
}

}  // namespace

int run_command(const Scenario& scenario, const std::string& out_dir,
                bool export_costates) {
  const PreparedScenario ps = prepare(scenario);
  const SolveReport report =
      solve_scheme(ps, scenario.mode, scenario.build_sweep_config());

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  write_summary((dir / "summary.txt").string(), ps.net, ps.grid, scenario.mode, report);
  write_states_csv((dir / "states.csv").string(), ps.grid, report.x);
  write_controls_csv((dir / "controls.csv").string(), ps.grid, ps.net, report.u);
  if (export_costates && !report.p.empty())
    write_costates_csv((dir / "costates.csv").string(), ps.grid, report.p);

  std::cout << "scheme " << scenario.mode << ": " << status_name(report.status) << " in "
            << report.iterations << " iterations, J_o = " << report.social_cost << '\n';
  return report.converged ? kExitOk : kExitNoConvergence;
}

int compare_command(const Scenario& scenario, const std::string& out_dir) {
  const PreparedScenario ps = prepare(scenario);
  std::vector<double> alphas = scenario.alpha_scan;
  if (alphas.empty()) alphas.push_back(scenario.alpha);
  const SweepConfig cfg = scenario.build_sweep_config();

  struct Row {
    double alpha;
    SolveReport baseline, game, central;
  };
  // independent runs; each alpha owns its chunk of the output
  std::vector<std::future<Row>> futures;
  futures.reserve(alphas.size());
  for (double a : alphas)
    futures.push_back(std::async(std::launch::async, [&, a]() {
      Row row{a,
              solve_scheme(ps, "baseline", cfg, a, &scenario),
              solve_scheme(ps, "game", cfg, a, &scenario),
              solve_scheme(ps, "central", cfg, a, &scenario)};
      return row;
    }));

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  std::ostringstream table;
  table << "# alpha scheme social_cost converged iterations\n";
  bool all_converged = true;
  for (size_t idx = 0; idx < futures.size(); ++idx) {
    const Row row = futures[idx].get();
    for (const auto& [name, report] :
         {std::pair<const char*, const SolveReport&>{"baseline", row.baseline},
          {"game", row.game},
          {"central", row.central}}) {
      table << format_double(row.alpha) << ' ' << name << ' '
            << format_double(report.social_cost) << ' ' << (report.converged ? 1 : 0)
            << ' ' << report.iterations << '\n';
      all_converged = all_converged && report.converged;
    }
    // network-average infection over time, one file per alpha
    std::ostringstream navg;
    navg << "t,baseline,game,central\n";
    const int n = ps.net.node_count();
    for (int k = 0; k < ps.grid.samples(); ++k) {
      double nb = 0.0, ng = 0.0, nc = 0.0;
      for (int i = 0; i < n; ++i) {
        nb += row.baseline.x.at(k, i);
        ng += row.game.x.at(k, i);
        nc += row.central.x.at(k, i);
      }
      navg << format_double(ps.grid.time(k)) << ',' << format_double(nb / n) << ','
           << format_double(ng / n) << ',' << format_double(nc / n) << '\n';
    }
    atomic_write_text((dir / ("navg_alpha" + std::to_string(idx) + ".csv")).string(),
                      navg.str());
  }
  atomic_write_text((dir / "compare.txt").string(), table.str());
  std::cout << table.str();
  return all_converged ? kExitOk : kExitNoConvergence;
}

int verify_command(const Scenario& scenario, bool inject_corruption) {
  const PreparedScenario ps = prepare(scenario);
  if (ps.net.node_count() > 8) {
    std::cerr << "verify: instance too large (N = " << ps.net.node_count()
              << ", guard is N <= 8)\n";
    return kExitConfig;
  }
  const SweepConfig cfg = scenario.build_sweep_config();
  SolveReport report = dvr_solve(ps.net, ps.grid, ps.x0, ps.costs, SolveMode::Game, cfg);
  if (!report.converged) {
    std::cerr << "verify: game mode did not converge\n";
    return kExitNoConvergence;
  }

  if (inject_corruption) {
    for (int k = 0; k < report.u.samples(); ++k)
      report.u.at(k, 0) *= 0.5;
    report.x = integrate_forward(ps.net, ps.grid, ps.x0, report.u);
    for (NodeId i = 0; i < ps.net.node_count(); ++i)
      report.player_costs[static_cast<size_t>(i)] =
          player_cost(ps.net, ps.grid, report.x, report.u, ps.costs, i);
    std::cout << "injected corruption: halved u on edge ("
              << ps.net.edge(0).from << ", " << ps.net.edge(0).to << ")\n";
  }

  bool ok = true;
  std::cout << "probe seed = " << scenario.verify_seed << '\n';

  const auto probes = sample_deviation_probes(report, ps.net, scenario.verify_probes,
                                              scenario.verify_probe_delta,
                                              scenario.verify_seed);
  const double worst = ne_deviation_check(report, ps.net, ps.grid, ps.costs, probes);
  const bool deviation_ok = worst < 1e-5;
  ok = ok && deviation_ok;
  std::cout << (deviation_ok ? "[PASS]" : "[FAIL]")
            << " deviation check: worst relative cost decrease = " << worst << '\n';

  if (!inject_corruption) {
    double worst_rel = 0.0, worst_zero = 0.0;
    const auto reach = reachable_sets(ps.net);
    for (NodeId i = 0; i < ps.net.node_count(); ++i)
      for (NodeId j = 0; j < ps.net.node_count(); ++j) {
        const AdjointCheck check =
            adjoint_gradient_check(report, ps.net, ps.grid, ps.costs, SolveMode::Game,
                                   i, j, scenario.verify_adjoint_delta);
        const bool influences =
            std::find(reach[static_cast<size_t>(j)].begin(),
                      reach[static_cast<size_t>(j)].end(),
                      i) != reach[static_cast<size_t>(j)].end();
        if (influences)
          worst_rel = std::max(worst_rel, check.relative_error);
        else
          worst_zero = std::max(worst_zero, std::max(std::abs(check.finite_difference),
                                                     std::abs(check.costate_value)));
      }
    const bool adjoint_ok = worst_rel < 1e-3 && worst_zero < 1e-8;
    ok = ok && adjoint_ok;
    std::cout << (adjoint_ok ? "[PASS]" : "[FAIL]")
              << " adjoint check: worst relative error = " << worst_rel
              << ", worst zero-pair magnitude = " << worst_zero << '\n';

    const PotentialCheck potential = potential_equivalence_check(
        ps.net, ps.grid, ps.x0, ps.costs, cfg, 10, scenario.verify_seed);
    const bool potential_ok =
        potential.control_gap < 1e-6 &&
        potential.max_identity_error < 1e-8 * std::abs(potential.social_cost);
    ok = ok && potential_ok;
    std::cout << (potential_ok ? "[PASS]" : "[FAIL]")
              << " potential-game check: control gap = " << potential.control_gap
              << ", identity error = " << potential.max_identity_error << '\n';
  }

  return ok ? kExitOk : kExitVerification;
}

int generate_graph_command(int n, int m, std::uint64_t seed, double beta, double sigma,
                           const std::string& out_dir) {
  const Network net = generate_barabasi_albert(n, m, seed, beta, sigma);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  save_network(net, (dir / "edges.txt").string(), (dir / "nodes.txt").string());
  const DegreeStats stats = degree_stats(net);
  std::cout << "nodes = " << net.node_count() << ", edges = " << net.edge_count()
            << ", mean out-degree = " << stats.mean_out_degree
            << ", max out-degree = " << stats.max_out_degree
            << ", largest real eigenvalue of W^oB - D = " << largest_real_eigenvalue(net)
            << '\n';
  return kExitOk;
}

}  // namespace dvr
