#pragma once

#include <string>

#include "bectrans/types.hpp"

namespace bectrans {

/// Result record of one verify run; serialized as JSON next to the data
/// files. The digest is the FNV-1a hash of config_echo, i.e. of the config
/// actually used after CLI overrides.
struct RunSummary {
  std::string config_echo;    // canonical JSON text
  std::string config_digest;  // hex64(fnv1a64(config_echo))
  std::string tool_version;
  double final_fidelity = 0;
  double excitation_energy_J = 0;
  double excitation_energy_hw = 0;  // units of hbar*omega0
  double max_displacement_m = 0;    // max_t |q_c - q0|
  double norm_drift = 0;
  double wall_time_s = 0;
  double dt_s = 0;
  Index grid_points = 0;
  Index total_steps = 0;
};

void write_summary(const std::string& path, const RunSummary& s);
RunSummary parse_summary(const std::string& path);

}  // namespace bectrans
