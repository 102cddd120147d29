#include "bectrans/io/experiment_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bectrans {

using json = nlohmann::ordered_json;

const char* to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::direct: return "direct";
    case ProtocolKind::polynomial: return "polynomial";
    case ProtocolKind::compensating: return "compensating";
    case ProtocolKind::bangbang_displacement: return "bangbang_displacement";
    case ProtocolKind::bangbang_range: return "bangbang_range";
  }
  return "?";
}

ProtocolKind protocol_from_string(const std::string& s) {
  if (s == "direct") return ProtocolKind::direct;
  if (s == "polynomial") return ProtocolKind::polynomial;
  if (s == "compensating") return ProtocolKind::compensating;
  if (s == "bangbang_displacement") return ProtocolKind::bangbang_displacement;
  if (s == "bangbang_range") return ProtocolKind::bangbang_range;
  throw ConfigError("unknown protocol kind: \"" + s + "\"");
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key))
    throw ConfigError("config: missing required key \"" + key + "\"");
  if (!j[key].is_number())
    throw ConfigError("config: key \"" + key + "\" must be a number");
  return j[key].get<double>();
}

double optional_number(const json& j, const std::string& key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number())
    throw ConfigError("config: key \"" + key + "\" must be a number");
  return j[key].get<double>();
}

bool optional_bool(const json& j, const std::string& key, bool dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_boolean())
    throw ConfigError("config: key \"" + key + "\" must be a boolean");
  return j[key].get<bool>();
}

std::vector<double> number_list(const json& j, const std::string& key) {
  if (!j[key].is_array())
    throw ConfigError("config: key \"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number())
      throw ConfigError("config: key \"" + key + "\" must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& scope) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ConfigError("config: unknown key \"" + item.key() + "\"" +
                        (scope.empty() ? "" : " in " + scope));
}

void check_positive(double v, const std::string& key) {
  if (!(v > 0)) throw ConfigError("config: \"" + key + "\" must be > 0");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  static const std::set<std::string> common_keys{
      "protocol",       "omega0_rad_per_s", "g1_over_hbar_m_per_s",
      "d_m",            "mass_kg",          "grid_points",
      "grid_halfwidth_a0", "dt_s",          "snapshot_stride",
      "write_snapshots", "lab_frame",       "quartic_coeff",
      "ground_state_tol", "out_dir",        "noise",
      "t_f_s",          "delta_m",          "q_lo_m",
      "q_hi_m",         "cubic_ramp"};
  reject_unknown(j, common_keys, "");

  ExperimentConfig cfg;
  if (!j.contains("protocol") || !j["protocol"].is_string())
    throw ConfigError("config: missing required string key \"protocol\"");
  cfg.kind = protocol_from_string(j["protocol"].get<std::string>());

  cfg.omega0_rad_per_s = require_number(j, "omega0_rad_per_s");
  check_positive(cfg.omega0_rad_per_s, "omega0_rad_per_s");
  cfg.g1_over_hbar_m_per_s = require_number(j, "g1_over_hbar_m_per_s");
  if (cfg.g1_over_hbar_m_per_s < 0)
    throw ConfigError("config: \"g1_over_hbar_m_per_s\" must be >= 0");
  cfg.d_m = require_number(j, "d_m");
  if (cfg.d_m < 0) throw ConfigError("config: \"d_m\" must be >= 0");
  cfg.mass_kg = optional_number(j, "mass_kg", k_mass_rb87);
  check_positive(cfg.mass_kg, "mass_kg");

  // Protocol-specific parameters; anything else present is an error, so a
  // stray physics parameter can never be silently ignored.
  const auto forbid = [&](const char* key) {
    if (j.contains(key))
      throw ConfigError(std::string("config: key \"") + key +
                        "\" is not valid for protocol \"" +
                        to_string(cfg.kind) + "\"");
  };
  switch (cfg.kind) {
    case ProtocolKind::direct:
    case ProtocolKind::polynomial:
      cfg.t_f_s = require_number(j, "t_f_s");
      check_positive(cfg.t_f_s, "t_f_s");
      forbid("delta_m");
      forbid("q_lo_m");
      forbid("q_hi_m");
      forbid("cubic_ramp");
      break;
    case ProtocolKind::compensating:
      cfg.t_f_s = require_number(j, "t_f_s");
      check_positive(cfg.t_f_s, "t_f_s");
      cfg.cubic_ramp = optional_bool(j, "cubic_ramp", false);
      forbid("delta_m");
      forbid("q_lo_m");
      forbid("q_hi_m");
      break;
    case ProtocolKind::bangbang_displacement:
      cfg.delta_m = require_number(j, "delta_m");
      check_positive(cfg.delta_m, "delta_m");
      forbid("t_f_s");  // the minimum time is derived
      forbid("q_lo_m");
      forbid("q_hi_m");
      forbid("cubic_ramp");
      break;
    case ProtocolKind::bangbang_range:
      cfg.q_lo_m = require_number(j, "q_lo_m");
      cfg.q_hi_m = require_number(j, "q_hi_m");
      forbid("t_f_s");
      forbid("delta_m");
      forbid("cubic_ramp");
      break;
  }

  cfg.grid_points =
      static_cast<Index>(optional_number(j, "grid_points", 0));
  if (cfg.grid_points < 0)
    throw ConfigError("config: \"grid_points\" must be >= 0");
  cfg.grid_halfwidth_a0 = optional_number(j, "grid_halfwidth_a0", 0.0);
  cfg.dt_s = optional_number(j, "dt_s", 0.0);
  cfg.snapshot_stride =
      static_cast<Index>(optional_number(j, "snapshot_stride", 0));
  cfg.write_snapshots = optional_bool(j, "write_snapshots", false);
  cfg.lab_frame = optional_bool(j, "lab_frame", false);
  if (cfg.kind != ProtocolKind::compensating) forbid("quartic_coeff");
  cfg.quartic_coeff = optional_number(j, "quartic_coeff", 0.0);
  cfg.ground_state_tol = optional_number(j, "ground_state_tol", 1e-8);
  check_positive(cfg.ground_state_tol, "ground_state_tol");
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string())
      throw ConfigError("config: \"out_dir\" must be a string");
    cfg.out_dir = j["out_dir"].get<std::string>();
  }

  if (j.contains("noise")) {
    const json& nj = j["noise"];
    if (!nj.is_object()) throw ConfigError("config: \"noise\" must be an object");
    static const std::set<std::string> noise_keys{
        "lambda_m", "n_realizations", "master_seed",
        "dt_scaled", "t_f_s",          "g1_over_hbar_m_per_s"};
    reject_unknown(nj, noise_keys, "\"noise\"");
    NoiseBlock nb;
    if (!nj.contains("lambda_m"))
      throw ConfigError("config: noise block needs \"lambda_m\"");
    nb.lambda_m = number_list(nj, "lambda_m");
    for (double l : nb.lambda_m)
      if (l < 0) throw ConfigError("config: noise lambda_m must be >= 0");
    nb.n_realizations =
        static_cast<Index>(optional_number(nj, "n_realizations", 2000));
    if (nb.n_realizations < 1)
      throw ConfigError("config: noise n_realizations must be >= 1");
    nb.master_seed = static_cast<std::uint64_t>(
        optional_number(nj, "master_seed", 1));
    nb.dt_scaled = optional_number(nj, "dt_scaled", 1e-3);
    check_positive(nb.dt_scaled, "noise.dt_scaled");
    if (nj.contains("t_f_s")) nb.t_f_s = number_list(nj, "t_f_s");
    if (nj.contains("g1_over_hbar_m_per_s"))
      nb.g1_over_hbar_m_per_s = number_list(nj, "g1_over_hbar_m_per_s");
    cfg.noise = std::move(nb);
  }
  return cfg;
}

std::string ExperimentConfig::canonical_json() const {
  json j;
  j["protocol"] = to_string(kind);
  j["omega0_rad_per_s"] = omega0_rad_per_s;
  j["g1_over_hbar_m_per_s"] = g1_over_hbar_m_per_s;
  j["d_m"] = d_m;
  j["mass_kg"] = mass_kg;
  switch (kind) {
    case ProtocolKind::direct:
    case ProtocolKind::polynomial:
      j["t_f_s"] = t_f_s;
      break;
    case ProtocolKind::compensating:
      j["t_f_s"] = t_f_s;
      j["cubic_ramp"] = cubic_ramp;
      break;
    case ProtocolKind::bangbang_displacement:
      j["delta_m"] = delta_m;
      break;
    case ProtocolKind::bangbang_range:
      j["q_lo_m"] = q_lo_m;
      j["q_hi_m"] = q_hi_m;
      break;
  }
  j["grid_points"] = grid_points;
  j["grid_halfwidth_a0"] = grid_halfwidth_a0;
  j["dt_s"] = dt_s;
  j["snapshot_stride"] = snapshot_stride;
  j["write_snapshots"] = write_snapshots;
  j["lab_frame"] = lab_frame;
  j["quartic_coeff"] = quartic_coeff;
  j["ground_state_tol"] = ground_state_tol;
  j["out_dir"] = out_dir;
  if (noise) {
    json nj;
    nj["lambda_m"] = noise->lambda_m;
    nj["n_realizations"] = noise->n_realizations;
    nj["master_seed"] = noise->master_seed;
    nj["dt_scaled"] = noise->dt_scaled;
    if (!noise->t_f_s.empty()) nj["t_f_s"] = noise->t_f_s;
    if (!noise->g1_over_hbar_m_per_s.empty())
      nj["g1_over_hbar_m_per_s"] = noise->g1_over_hbar_m_per_s;
    j["noise"] = std::move(nj);
  }
  return j.dump(2);
}

}  // namespace bectrans
