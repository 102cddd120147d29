// bectrans: design, verify and noise-average fast condensate transport
// protocols in a moving 1D trap.
//
// Subcommands:
//   design       write the trap / condensate trajectory table
//   verify       ground state + full propagation + summary metrics
//   noise-sweep  Monte Carlo fidelity vs noise amplitude table
//   selftest     fast built-in consistency checks
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 1 unexpected error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bectrans/errors.hpp"
#include "bectrans/io/runner.hpp"
#include "bectrans/version.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double dt = 0;
  bool dt_set = false;
  long long grid_points = 0;
  bool grid_set = false;
};

bectrans::ExperimentConfig load_config(const CliOverrides& o) {
  auto cfg = bectrans::ExperimentConfig::from_file(o.config_path);
  if (o.seed_set && cfg.noise) cfg.noise->master_seed = o.seed;
  if (o.dt_set) cfg.dt_s = o.dt;
  if (o.grid_set) cfg.grid_points = static_cast<bectrans::Index>(o.grid_points);
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (cfg.out_dir.empty()) {
    if (const char* env = std::getenv("BECTRANS_OUT_DIR"))
      cfg.out_dir = env;
    else
      cfg.out_dir = "out";
  }
  return cfg;
}

void add_common(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "experiment config (JSON)")
      ->required();
  cmd->add_option("--out", o.out_dir, "output directory (default: $BECTRANS_OUT_DIR or ./out)");
  cmd->add_option("--seed", o.seed, "override the noise master seed")
      ->each([&](const std::string&) { o.seed_set = true; });
  cmd->add_option("--dt", o.dt, "override the propagation time step, s")
      ->each([&](const std::string&) { o.dt_set = true; });
  cmd->add_option("--grid-points", o.grid_points, "override the grid size")
      ->each([&](const std::string&) { o.grid_set = true; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fast excitation-free condensate transport designer/verifier"};
  app.set_version_flag("--version", std::string("bectrans ") + bectrans::k_version);
  app.require_subcommand(1);

  CliOverrides o;
  auto* cmd_design = app.add_subcommand("design", "write trajectory tables");
  add_common(cmd_design, o);
  auto* cmd_verify = app.add_subcommand("verify", "propagate and score a protocol");
  add_common(cmd_verify, o);
  auto* cmd_sweep = app.add_subcommand("noise-sweep", "Monte Carlo noise fidelity sweep");
  add_common(cmd_sweep, o);
  auto* cmd_selftest = app.add_subcommand("selftest", "run built-in checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_selftest->parsed()) {
      return bectrans::run_selftest(std::cout) == 0 ? 0 : 3;
    }
    const auto cfg = load_config(o);
    if (cmd_design->parsed()) {
      const auto path = bectrans::write_design_outputs(cfg, cfg.out_dir);
      std::cout << "wrote " << path << '\n';
      return 0;
    }
    if (cmd_verify->parsed()) {
      const auto v = bectrans::run_verify(cfg);
      const auto path = bectrans::write_verify_outputs(cfg, v, cfg.out_dir);
      std::cout << "final_fidelity " << v.summary.final_fidelity << '\n'
                << "excitation_energy_J " << v.summary.excitation_energy_J << '\n'
                << "norm_drift " << v.summary.norm_drift << '\n'
                << "wrote " << path << '\n';
      return 0;
    }
    if (cmd_sweep->parsed()) {
      const auto path = bectrans::write_sweep_outputs(cfg, cfg.out_dir);
      std::cout << "wrote " << path << '\n';
      return 0;
    }
  } catch (const bectrans::ConfigError& e) {
    std::cerr << "{\"error\":\"config\",\"message\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const bectrans::Error& e) {
    std::cerr << "{\"error\":\"numeric\",\"message\":\"" << e.what() << "\"}\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"unexpected\",\"message\":\"" << e.what() << "\"}\n";
    return 1;
  }
  return 0;
}
