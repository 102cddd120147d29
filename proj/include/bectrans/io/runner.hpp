#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bectrans/groundstate.hpp"
#include "bectrans/io/experiment_config.hpp"
#include "bectrans/io/run_summary.hpp"
#include "bectrans/noise_types.hpp"
#include "bectrans/propagator.hpp"
#include "bectrans/trajectory.hpp"

namespace bectrans {

/// Designed trap and condensate paths for one protocol instance.
struct ProtocolDesign {
  Trajectory<double> trap;
  Trajectory<double> condensate;
  std::string label;
  double t_f = 0;
  double t_1 = -1;          // bang-bang switch time, when applicable
  double max_accel = -1;    // compensating protocols
  double max_displacement = 0;  // max_t |q_c - q0|
  bool compensated = false;     // apply F = m q0'' during propagation
};

ProtocolDesign design_protocol(const ExperimentConfig& cfg);

/// Simulation grid for a run: co-moving by default, lab-spanning when
/// requested.
Grid1D<double> run_grid(const ExperimentConfig& cfg);

struct VerifyOutput {
  RunSummary summary;
  ProtocolDesign design;
  StationaryState<double> ground;
  PropagationResult<double> result;
};

/// Ground state + propagation + metrics for one config.
VerifyOutput run_verify(const ExperimentConfig& cfg);

/// design subcommand: writes <out_dir>/trajectory.tsv, returns its path.
std::string write_design_outputs(const ExperimentConfig& cfg,
                                 const std::string& out_dir);

/// verify subcommand files: summary.json, com_track.tsv and optionally
/// snapshots.tsv; returns the summary path.
std::string write_verify_outputs(const ExperimentConfig& cfg,
                                 const VerifyOutput& v,
                                 const std::string& out_dir);

/// Monte Carlo sweep over (g1, t_f, lambda); deterministic record order and
/// content for a fixed master seed.
std::vector<FidelityRecord<double>> run_noise_sweep(const ExperimentConfig& cfg);

std::string write_sweep_outputs(const ExperimentConfig& cfg,
                                const std::string& out_dir);

/// Fast built-in checks; prints one line per check, returns the number of
/// failures.
int run_selftest(std::ostream& log);

}  // namespace bectrans
