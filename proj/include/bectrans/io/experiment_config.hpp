#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bectrans/constants.hpp"
#include "bectrans/errors.hpp"
#include "bectrans/trap_config.hpp"
#include "bectrans/types.hpp"

namespace bectrans {

enum class ProtocolKind {
  direct,
  polynomial,
  compensating,
  bangbang_displacement,
  bangbang_range,
};

const char* to_string(ProtocolKind k);
ProtocolKind protocol_from_string(const std::string& s);

struct NoiseBlock {
  std::vector<double> lambda_m;
  Index n_realizations = 2000;
  std::uint64_t master_seed = 1;
  double dt_scaled = 1e-3;
  std::vector<double> t_f_s;                 // defaults to the run t_f
  std::vector<double> g1_over_hbar_m_per_s;  // defaults to the run coupling
};

/// Parsed experiment description. The JSON schema is strict: unknown keys
/// are rejected, as are protocol parameters that do not belong to the
/// selected protocol kind.
struct ExperimentConfig {
  ProtocolKind kind = ProtocolKind::polynomial;

  double omega0_rad_per_s = 0;
  double g1_over_hbar_m_per_s = 0;
  double d_m = 0;
  double mass_kg = k_mass_rb87;
  double t_f_s = 0;    // direct / polynomial / compensating
  double delta_m = 0;  // bangbang_displacement
  double q_lo_m = 0;   // bangbang_range
  double q_hi_m = 0;   // bangbang_range
  bool cubic_ramp = false;  // compensating: drop the zero-acceleration ends

  Index grid_points = 0;         // 0 -> 1024
  double grid_halfwidth_a0 = 0;  // 0 -> automatic
  double dt_s = 0;               // 0 -> 1e-5 * t_f
  Index snapshot_stride = 0;
  bool write_snapshots = false;
  bool lab_frame = false;
  double quartic_coeff = 0;      // trap shape stretch (compensating runs)
  double ground_state_tol = 1e-8;
  std::string out_dir;

  std::optional<NoiseBlock> noise;

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_string(const std::string& text);

  /// Canonical serialized form of the effective config; the run digest is
  /// computed over exactly this text.
  std::string canonical_json() const;

  TrapConfig<double> trap_config() const {
    return TrapConfig<double>::from_si(mass_kg, omega0_rad_per_s,
                                       g1_over_hbar_m_per_s, d_m);
  }
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace bectrans
