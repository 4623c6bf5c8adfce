#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "dvr/scenario.hpp"

namespace {

struct CommonOverrides {
  std::optional<std::string> mode;
  std::optional<double> epsilon;
  std::optional<int> max_iters;
  std::optional<std::uint64_t> seed;
};

void apply_overrides(dvr::Scenario& scenario, const CommonOverrides& o) {
  if (o.mode) scenario.mode = *o.mode;
  if (o.epsilon) scenario.epsilon = *o.epsilon;
  if (o.max_iters) scenario.max_iters = *o.max_iters;
  if (o.seed) {
    if (scenario.generate) scenario.generate->seed = *o.seed;
    scenario.verify_seed = *o.seed;
  }
}

void add_overrides(CLI::App* cmd, CommonOverrides& o) {
  cmd->add_option("--mode", o.mode,
                  "scheme: game | penalty-full | penalty-reach | central | baseline");
  cmd->add_option("--epsilon", o.epsilon, "sweep convergence tolerance");
  cmd->add_option("--max-iters", o.max_iters, "sweep iteration cap");
  cmd->add_option("--seed", o.seed, "override the scenario seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virus-resistant weight adaptation over directed networks"};
  app.require_subcommand(1);

  // generate-graph
  auto* gen = app.add_subcommand("generate-graph",
                                 "generate a bi-directional scale-free network");
  int gen_n = 150, gen_m = 4;
  std::uint64_t gen_seed = 1;
  double gen_beta = 0.04, gen_sigma = 0.1;
  std::string gen_out = ".";
  gen->add_option("--n", gen_n, "node count")->required();
  gen->add_option("--m", gen_m, "attachments per new node");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--beta", gen_beta, "uniform infection rate");
  gen->add_option("--sigma", gen_sigma, "uniform curing rate");
  gen->add_option("--out-dir", gen_out, "output directory");

  // run / compare / verify share the scenario argument
  std::string scenario_path, out_dir = "out";
  bool export_costates = false, inject_corruption = false;
  CommonOverrides run_o, cmp_o, ver_o;

  auto* run = app.add_subcommand("run", "solve one scheme and export trajectories");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_flag("--export-costates", export_costates, "also write costates.csv");
  add_overrides(run, run_o);

  auto* cmp = app.add_subcommand(
      "compare", "run baseline, game and central schemes on the same instance");
  cmp->add_option("scenario", scenario_path, "scenario JSON file")->required();
  cmp->add_option("--out-dir", out_dir, "output directory");
  add_overrides(cmp, cmp_o);

  auto* ver = app.add_subcommand("verify", "equilibrium and adjoint verification");
  ver->add_option("scenario", scenario_path, "scenario JSON file")->required();
  ver->add_flag("--inject-corruption", inject_corruption,
                "corrupt one control before checking, to demonstrate sensitivity");
  add_overrides(ver, ver_o);

  CLI11_PARSE(app, argc, argv);

  const auto started = std::chrono::steady_clock::now();
  int exit_code = 0;
  try {
    if (gen->parsed()) {
      exit_code = dvr::generate_graph_command(gen_n, gen_m, gen_seed, gen_beta,
                                              gen_sigma, gen_out);
    } else {
      dvr::Scenario scenario = dvr::load_scenario(scenario_path);
      if (run->parsed()) {
        apply_overrides(scenario, run_o);
        exit_code = dvr::run_command(scenario, out_dir, export_costates);
      } else if (cmp->parsed()) {
        apply_overrides(scenario, cmp_o);
        exit_code = dvr::compare_command(scenario, out_dir);
      } else {
        apply_overrides(scenario, ver_o);
        exit_code = dvr::verify_command(scenario, inject_corruption);
      }
    }
  } catch (const dvr::ScenarioError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return dvr::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cout << "wall clock: " << elapsed.count() << " ms\n";
  return exit_code;
}
