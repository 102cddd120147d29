#include "bectrans/io/run_summary.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bectrans/errors.hpp"

namespace bectrans {

using json = nlohmann::ordered_json;

void write_summary(const std::string& path, const RunSummary& s) {
  json j;
  j["tool"] = "bectrans";
  j["tool_version"] = s.tool_version;
  j["config_digest"] = s.config_digest;
  j["config"] = json::parse(s.config_echo);
  j["final_fidelity"] = s.final_fidelity;
  j["excitation_energy_J"] = s.excitation_energy_J;
  j["excitation_energy_hbar_omega0"] = s.excitation_energy_hw;
  j["max_displacement_m"] = s.max_displacement_m;
  j["norm_drift"] = s.norm_drift;
  j["wall_time_s"] = s.wall_time_s;
  j["dt_s"] = s.dt_s;
  j["grid_points"] = s.grid_points;
  j["total_steps"] = s.total_steps;
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file \"" + path + "\"");
  out << j.dump(2) << '\n';
}

RunSummary parse_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(std::string("malformed summary file: ") + e.what());
  }
  RunSummary s;
  s.tool_version = j.at("tool_version").get<std::string>();
  s.config_digest = j.at("config_digest").get<std::string>();
  s.config_echo = j.at("config").dump(2);
  s.final_fidelity = j.at("final_fidelity").get<double>();
  s.excitation_energy_J = j.at("excitation_energy_J").get<double>();
  s.excitation_energy_hw = j.at("excitation_energy_hbar_omega0").get<double>();
  s.max_displacement_m = j.at("max_displacement_m").get<double>();
  s.norm_drift = j.at("norm_drift").get<double>();
  s.wall_time_s = j.at("wall_time_s").get<double>();
  s.dt_s = j.at("dt_s").get<double>();
  s.grid_points = j.at("grid_points").get<Index>();
  s.total_steps = j.at("total_steps").get<Index>();
  return s;
}

}  // namespace bectrans
