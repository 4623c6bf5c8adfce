#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dvr/oracle.hpp"
#include "dvr/solver.hpp"

namespace dvr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitVerification = 4;

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateSpec {
  int n = 50;
  int m = 4;
  std::uint64_t seed = 1;
};

/// One experiment: network source, grid, initial infection, costs, scheme,
/// and sweep settings. Loaded from a JSON document (see README for the
/// grammar) or built programmatically.
struct Scenario {
  // network source: exactly one of generate / files / inline edges
  std::optional<GenerateSpec> generate;
  std::optional<std::pair<std::string, std::string>> files;  // edge file, node file
  std::optional<std::pair<int, std::vector<Edge>>> inline_edges;

  double beta = 0.04;   // uniform rates for generated / inline networks
  double sigma = 0.1;

  double t_final = 20.0;
  int steps = 2000;

  double x0_uniform = 0.16;
  std::optional<std::vector<double>> x0_values;
  std::optional<std::string> x0_file;

  double alpha = 1.0;
  std::optional<std::vector<double>> alpha_per_node;
  double d = 0.2;
  std::optional<std::vector<double>> d_per_edge;

  std::string mode = "game";  // game | penalty-full | penalty-reach | central | baseline

  double epsilon = 1e-6;
  int max_iters = 500;
  double damping = 0.5;

  std::vector<double> alpha_scan;  // compare: one row set per alpha

  int verify_probes = 20;
  double verify_probe_delta = 1e-3;
  double verify_adjoint_delta = 1e-5;
  std::uint64_t verify_seed = 7;

  Network build_network() const;
  TimeGrid build_grid() const { return TimeGrid(t_final, steps); }
  std::vector<double> build_x0(int n) const;
  CostModel build_costs(const Network& net,
                        std::optional<double> alpha_override = std::nullopt) const;
  SweepConfig build_sweep_config() const;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text, const std::string& base_dir);

/// Canonical small instances used across the test and verification tooling.
Scenario two_node_scenario();
Scenario five_node_dag_scenario();
Scenario ba_scenario(int n, int m, std::uint64_t seed);

SolveMode solve_mode_from_name(const std::string& name);
std::string solve_mode_name(SolveMode mode);

/// Trajectory CSV export/import. States: header `t,x_0,...`; controls:
/// header `t,u_i_j,...` naming each edge; costates: `t,p_0_0,...` row-major.
/// All values are printed with 17 significant digits so re-reading is exact.
void write_states_csv(const std::string& path, const TimeGrid& grid,
                      const StateTrajectory& x);
void write_controls_csv(const std::string& path, const TimeGrid& grid,
                        const Network& net, const ControlTrajectory& u);
void write_costates_csv(const std::string& path, const TimeGrid& grid,
                        const CostateTrajectory& p);
StateTrajectory read_states_csv(const std::string& path);
ControlTrajectory read_controls_csv(const std::string& path);

/// key = value summary, parseable back into a map.
void write_summary(const std::string& path, const Network& net, const TimeGrid& grid,
                   const std::string& scheme, const SolveReport& report);
std::map<std::string, std::string> parse_summary(const std::string& path);

/// Writes content to `path` atomically (temp file + rename).
void atomic_write_text(const std::string& path, const std::string& content);

/// Subcommand drivers; each returns a process exit code.
int run_command(const Scenario& scenario, const std::string& out_dir,
                bool export_costates);
int compare_command(const Scenario& scenario, const std::string& out_dir);
int verify_command(const Scenario& scenario, bool inject_corruption);
int generate_graph_command(int n, int m, std::uint64_t seed, double beta, double sigma,
                           const std::string& out_dir);

}  // namespace dvr
