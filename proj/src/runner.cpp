#include "bectrans/io/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "bectrans/bangbang.hpp"
#include "bectrans/classical.hpp"
#include "bectrans/design.hpp"
#include "bectrans/io/columnar.hpp"
#include "bectrans/metrics.hpp"
#include "bectrans/noise.hpp"
#include "bectrans/version.hpp"

namespace bectrans {

namespace {

double max_displacement(const Trajectory<double>& condensate,
                        const Trajectory<double>& trap) {
  double worst = 0;
  for (const auto& p : condensate.samples()) {
    // Open-interval branches; the nominal endpoint jumps are not dynamics.
    const double t = std::min(
        std::max(p.t, trap.t_f() * 1e-12), trap.t_f() * (1.0 - 1e-12));
    worst = std::max(worst, std::abs(p.q - trap.at_open(t).q));
  }
  return worst;
}

}  // namespace

ProtocolDesign design_protocol(const ExperimentConfig& cfg) {
  ProtocolDesign out;
  const double w0 = cfg.omega0_rad_per_s;
  switch (cfg.kind) {
    case ProtocolKind::direct: {
      out.trap =
          direct_trap_trajectory(DirectProtocol<double>::make(cfg.d_m, cfg.t_f_s));
      out.condensate = classical_response(out.trap, w0);
      out.label = "direct trapezoid ramp";
      out.t_f = cfg.t_f_s;
      break;
    }
    case ProtocolKind::polynomial: {
      auto inv = polynomial_inverse(cfg.d_m, cfg.t_f_s, w0);
      out.trap = std::move(inv.trap);
      out.condensate = std::move(inv.condensate);
      out.label = "inverse-engineered quintic";
      out.t_f = cfg.t_f_s;
      break;
    }
    case ProtocolKind::compensating: {
      auto cp = compensating_force(cfg.d_m, cfg.t_f_s, cfg.mass_kg,
                                   !cfg.cubic_ramp);
      out.trap = cp.trap;
      out.condensate = cp.trap;  // the condensate rides the trap center
      out.label = cfg.cubic_ramp ? "compensating force, cubic ramp"
                                 : "compensating force, quintic ramp";
      out.t_f = cfg.t_f_s;
      out.max_accel = cp.max_accel;
      out.compensated = true;
      break;
    }
    case ProtocolKind::bangbang_displacement: {
      auto sol = solve_displacement_bounded(cfg.d_m, cfg.delta_m, w0);
      out.trap = std::move(sol.trap);
      out.condensate = std::move(sol.condensate);
      out.label = "bang-bang, bounded displacement";
      out.t_f = sol.t_f;
      out.t_1 = sol.t_1;
      break;
    }
    case ProtocolKind::bangbang_range: {
      auto sol = solve_range_bounded(cfg.d_m, cfg.q_lo_m, cfg.q_hi_m, w0);
      out.trap = std::move(sol.trap);
      out.condensate = std::move(sol.condensate);
      out.label = "bang-bang, bounded trap range";
      out.t_f = sol.t_f;
      out.t_1 = sol.t_1;
      break;
    }
  }
  out.max_displacement = max_displacement(out.condensate, out.trap);
  return out;
}

Grid1D<double> run_grid(const ExperimentConfig& cfg) {
  const auto tc = cfg.trap_config();
  const Index n = cfg.grid_points > 0 ? cfg.grid_points : 1024;
  double hw = cfg.grid_halfwidth_a0;
  if (hw <= 0) {
    const double g = tc.coupling_dimensionless();
    const double r_tf = g > 0 ? std::sqrt(2.0 * thomas_fermi_mu(g)) : 0.0;
    hw = 12.0 * std::max(1.0, r_tf);
  }
  if (cfg.lab_frame)
    return Grid1D<double>(-hw, cfg.d_m / tc.oscillator_length + hw, n);
  return Grid1D<double>::centered(hw, n);
}

VerifyOutput run_verify(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto tc = cfg.trap_config();
  VerifyOutput v;
  v.design = design_protocol(cfg);
  const auto grid = run_grid(cfg);

  GroundStateOptions<double> gopt;
  gopt.tol = cfg.ground_state_tol;
  gopt.quartic = cfg.quartic_coeff;
  v.ground = solve_ground_state(tc, grid, gopt);

  const Trajectory<double> frame =
      cfg.lab_frame ? Trajectory<double>::constant(v.design.t_f, 0.0)
                    : v.design.condensate;
  PropagationOptions<double> popt;
  popt.dt = cfg.dt_s;
  popt.snapshot_stride = cfg.snapshot_stride;
  popt.quartic = cfg.quartic_coeff;
  if (v.design.compensated) popt.applied_accel = &v.design.trap;
  v.result = propagate(tc, v.design.trap, frame, v.ground.chi, v.ground.chi, popt);

  const auto lab_final = with_lab_phase(v.result.final_state, tc);
  const double target_center =
      (cfg.d_m - v.result.final_state.frame_offset) / tc.oscillator_length;
  const double e_exc_hw = excitation_energy(lab_final, v.ground, target_center,
                                            cfg.quartic_coeff);

  RunSummary& s = v.summary;
  s.config_echo = cfg.canonical_json();
  s.config_digest = hex64(fnv1a64(s.config_echo));
  s.tool_version = k_version;
  s.final_fidelity = v.result.final_fidelity;
  s.excitation_energy_hw = e_exc_hw;
  s.excitation_energy_J = e_exc_hw * tc.energy_unit();
  s.max_displacement_m = v.design.max_displacement;
  s.norm_drift = v.result.norm_drift;
  s.dt_s = cfg.dt_s > 0 ? cfg.dt_s : 1e-5 * v.design.t_f;
  s.grid_points = grid.size();
  s.total_steps = v.result.total_steps;
  s.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return v;
}

std::string write_design_outputs(const ExperimentConfig& cfg,
                                 const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto design = design_protocol(cfg);
  const std::string path = out_dir + "/trajectory.tsv";
  write_trajectory_file(path, design.trap, design.condensate, design.label);
  return path;
}

std::string write_verify_outputs(const ExperimentConfig& cfg,
                                 const VerifyOutput& v,
                                 const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string path = out_dir + "/summary.json";
  write_summary(path, v.summary);
  write_com_track_file(out_dir + "/com_track.tsv", v.result.com_track);
  if (cfg.write_snapshots)
    write_snapshot_file(out_dir + "/snapshots.tsv", v.result.snapshots,
                        cfg.trap_config().oscillator_length);
  return path;
}

std::vector<FidelityRecord<double>> run_noise_sweep(const ExperimentConfig& cfg) {
  if (!cfg.noise) throw ConfigError("noise sweep: config has no noise block");
  const NoiseBlock& nb = *cfg.noise;
  std::vector<double> g_list = nb.g1_over_hbar_m_per_s;
  if (g_list.empty()) g_list = {cfg.g1_over_hbar_m_per_s};
  std::vector<double> tf_list = nb.t_f_s;
  if (tf_list.empty()) tf_list = {design_protocol(cfg).t_f};

  std::vector<FidelityRecord<double>> records;
  records.reserve(g_list.size() * tf_list.size() * nb.lambda_m.size());
  const Index n_points = cfg.grid_points > 0 ? cfg.grid_points : 1024;
  for (double g : g_list) {
    const auto tc = TrapConfig<double>::from_si(cfg.mass_kg,
                                                cfg.omega0_rad_per_s, g, cfg.d_m);
    const auto grid = cfg.grid_halfwidth_a0 > 0
                          ? Grid1D<double>::centered(cfg.grid_halfwidth_a0, n_points)
                          : default_grid(tc, n_points);
    GroundStateOptions<double> gopt;
    gopt.tol = cfg.ground_state_tol;
    const auto ground = solve_ground_state(tc, grid, gopt);
    AverageFidelityOptions<double> aopt;
    aopt.dt_scaled = nb.dt_scaled;
    for (double t_f : tf_list)
      for (double lambda : nb.lambda_m)
        records.push_back(average_fidelity(tc, ground, t_f, lambda,
                                           nb.n_realizations, nb.master_seed,
                                           aopt));
  }
  return records;
}

std::string write_sweep_outputs(const ExperimentConfig& cfg,
                                const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto records = run_noise_sweep(cfg);
  const std::string path = out_dir + "/noise_sweep.tsv";
  write_sweep_file(path, records);
  return path;
}

int run_selftest(std::ostream& log) {
  int failures = 0;
  const auto check = [&](const char* name, bool ok) {
    log << (ok ? "[ok]   " : "[FAIL] ") << name << '\n';
    if (!ok) ++failures;
  };
  const double w0 = 2 * M_PI * 50.0;
  const auto tc = TrapConfig<double>::from_si(k_mass_rb87, w0, 0.05, 1.6e-3);

  check("oscillator length matches sqrt(hbar/(m omega0))",
        std::abs(tc.oscillator_length -
                 std::sqrt(k_hbar / (k_mass_rb87 * w0))) <
            1e-18);
  check("unit round-trip",
        std::abs(from_dimensionless(
                     tc, to_dimensionless(tc, 1.23e-4, Unit::length),
                     Unit::length) -
                 1.23e-4) < 1e-16);

  {
    Grid1D<double> g(-8.0, 8.0, 256);
    ArrayXc<double> a = ArrayXc<double>::Constant(256, {0.3, 0.4});
    auto psi = normalized(Wavefunction<double>(g, a));
    auto twice = normalized(psi);
    check("normalize is idempotent",
          (twice.amp == psi.amp).all() &&
              std::abs(norm_squared(psi) - 1.0) < 1e-10);
  }
  {
    const auto p = DirectProtocol<double>::make(1.6e-3, 0.02);
    const auto q0 = direct_trap_trajectory(p);
    check("direct ramp crosses d/4 at t_f/3",
          std::abs(q0.at(0.02 / 3).q - 1.6e-3 / 4) < 1e-18);
    const auto [dq, dv] = direct_final_excursion(1.6e-3, 3 * M_PI / w0, w0);
    check("resonant direct transport has zero excursion",
          std::abs(dq) < 1e-18 && std::abs(dv) < 1e-15);
  }
  {
    const auto inv = polynomial_inverse(1.6e-3, 0.02, w0);
    const auto end = inv.condensate.at(0.02);
    check("quintic boundary conditions",
          std::abs(end.q - 1.6e-3) < 1e-12 * 1.6e-3 &&
              std::abs(end.q_dot) < 1e-10 && std::abs(end.q_ddot) < 1e-6);
  }
  {
    const auto sol = solve_displacement_bounded(1.6e-3, 0.162e-3, w0);
    check("bang-bang minimum time formula",
          std::abs(sol.t_f - 2 * std::sqrt(1.6e-3 / 0.162e-3) / w0) < 1e-15 &&
              sol.t_1 == sol.t_f / 2);
    const auto rep = verify_boundary(sol.trap, 1.6e-3, w0, 1024);
    check("bang-bang reaches the target at rest",
          std::abs(rep.x1_end) < 1e-8 * 1.6e-3 &&
              std::abs(rep.x2_end) < 1e-8 * 1.6e-3 * w0);
  }
  {
    const auto sol = solve_range_bounded(1.0, 0.0, 1.0, 1.0);
    check("range-bounded switch times",
          std::abs(sol.t_1 - M_PI / 3) < 1e-12 &&
              std::abs(sol.t_f - 2 * M_PI / 3) < 1e-12);
  }
  {
    const auto z1 = sample_noise<double>(42, 0.02, w0, 1e-3);
    const auto z2 = sample_noise<double>(42, 0.02, w0, 1e-3);
    check("noise resample is bit-identical", (z1.samples == z2.samples).all());
    NoiseRealization<double> ones;
    ones.seed = 0;
    ones.dt_scaled = 1e-4;
    ones.samples = ArrayX<double>::Constant(
        static_cast<Index>(std::ceil(w0 * 0.02 / 1e-4)), 1.0);
    const auto pair = beta_integrals(ones, w0, 0.02);
    check("unit-noise response integral",
          std::abs(pair.beta - (1 - std::cos(w0 * 0.02))) < 1e-9);
  }
  log << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures;
}

}  // namespace bectrans
