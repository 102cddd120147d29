#pragma once

#include <string>
#include <vector>

#include "bectrans/noise_types.hpp"
#include "bectrans/propagator.hpp"
#include "bectrans/trajectory.hpp"

namespace bectrans {

/// Shortest text form that round-trips an IEEE double exactly.
std::string format_full(double v);

struct TrajectoryRow {
  double t = 0;
  double q0 = 0;
  double q0_dot = 0;
  double qc = 0;
  double qc_dot = 0;
  double displacement = 0;  // qc - q0
};

/// Columnar trap/condensate file: one row per sample; piecewise protocols
/// get a blank line plus a jump-marker comment at every discontinuity, and
/// the nominal endpoint rows are always present.
void write_trajectory_file(const std::string& path,
                           const Trajectory<double>& trap,
                           const Trajectory<double>& condensate,
                           const std::string& protocol_label);

std::vector<TrajectoryRow> parse_trajectory_file(const std::string& path);

void write_sweep_file(const std::string& path,
                      const std::vector<FidelityRecord<double>>& records);

std::vector<FidelityRecord<double>> parse_sweep_file(const std::string& path);

/// Wavefunction snapshots as (t, q, Re psi, Im psi) blocks; q in meters
/// (lab frame), psi in the co-moving gauge per 1/sqrt(a0).
void write_snapshot_file(const std::string& path,
                         const std::vector<FrameSnapshot<double>>& snaps,
                         double oscillator_length);

void write_com_track_file(
    const std::string& path,
    const std::vector<std::pair<double, double>>& com_track);

}  // namespace bectrans
