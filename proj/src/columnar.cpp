#include "bectrans/io/columnar.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bectrans/errors.hpp"

namespace bectrans {

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file \"" + path + "\"");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file \"" + path + "\"");
  return in;
}

TrajectoryRow make_row(const Trajectory<double>& trap,
                       const Trajectory<double>& condensate, double t,
                       bool nominal) {
  const auto p0 = nominal ? trap.at(t) : trap.at_open(t);
  const auto pc = nominal ? condensate.at(t) : condensate.at_open(t);
  return {t, p0.q, p0.q_dot, pc.q, pc.q_dot, pc.q - p0.q};
}

void put_row(std::ofstream& out, const TrajectoryRow& r) {
  out << format_full(r.t) << '\t' << format_full(r.q0) << '\t'
      << format_full(r.q0_dot) << '\t' << format_full(r.qc) << '\t'
      << format_full(r.qc_dot) << '\t' << format_full(r.displacement) << '\n';
}

}  // namespace

void write_trajectory_file(const std::string& path,
                           const Trajectory<double>& trap,
                           const Trajectory<double>& condensate,
                           const std::string& protocol_label) {
  auto out = open_out(path);
  out << "# bectrans trajectory: " << protocol_label << '\n';
  out << "# columns: t_s q0_m q0_dot_m_per_s qc_m qc_dot_m_per_s displacement_m\n";
  const double t_f = trap.t_f();
  const auto& bps = trap.breakpoints();

  // Does the nominal endpoint differ from the open-interval branch?
  const auto differs = [&](double t) {
    const auto a = trap.at(t);
    const auto b = trap.at_open(t);
    return std::abs(a.q - b.q) > 1e-15 * (std::abs(a.q) + std::abs(b.q) + 1e-300);
  };

  if (differs(0.0)) {
    put_row(out, make_row(trap, condensate, 0.0, true));
    out << "\n# jump t_s=" << format_full(0.0) << '\n';
  }
  std::size_t next_bp = 0;
  for (const auto& s : trap.samples()) {
    while (next_bp < bps.size() && s.t > bps[next_bp]) ++next_bp;
    if (next_bp < bps.size() && s.t == bps[next_bp]) {
      // Left limit of the outgoing branch, then the marker, then the row
      // from the incoming branch below.
      const double eps = t_f * 1e-9;
      auto left = make_row(trap, condensate, bps[next_bp] - eps, false);
      left.t = bps[next_bp];
      put_row(out, left);
      out << "\n# jump t_s=" << format_full(bps[next_bp]) << '\n';
      ++next_bp;
    }
    put_row(out, make_row(trap, condensate, s.t,
                          !differs(s.t) || (s.t != 0.0 && s.t != t_f)));
  }
  if (differs(t_f)) {
    out << "\n# jump t_s=" << format_full(t_f) << '\n';
    put_row(out, make_row(trap, condensate, t_f, true));
  }
}

std::vector<TrajectoryRow> parse_trajectory_file(const std::string& path) {
  auto in = open_in(path);
  std::vector<TrajectoryRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    TrajectoryRow r;
    if (!(ss >> r.t >> r.q0 >> r.q0_dot >> r.qc >> r.qc_dot >> r.displacement))
      throw Error("malformed trajectory row: \"" + line + "\"");
    rows.push_back(r);
  }
  return rows;
}

void write_sweep_file(const std::string& path,
                      const std::vector<FidelityRecord<double>>& records) {
  auto out = open_out(path);
  out << "# bectrans noise sweep\n";
  out << "# columns: lambda_m g1_over_hbar_m_per_s t_f_s mean_fidelity "
         "std_error n seed\n";
  for (const auto& r : records) {
    const double g_over_hbar = r.g1 / k_hbar;
    out << format_full(r.lambda) << '\t' << format_full(g_over_hbar) << '\t'
        << format_full(r.t_f) << '\t' << format_full(r.mean_fidelity) << '\t'
        << format_full(r.std_error) << '\t' << r.n_realizations << '\t'
        << r.seed << '\n';
  }
}

std::vector<FidelityRecord<double>> parse_sweep_file(const std::string& path) {
  auto in = open_in(path);
  std::vector<FidelityRecord<double>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    FidelityRecord<double> r;
    double g_over_hbar = 0;
    long long n = 0;
    unsigned long long seed = 0;
    if (!(ss >> r.lambda >> g_over_hbar >> r.t_f >> r.mean_fidelity >>
          r.std_error >> n >> seed))
      throw Error("malformed sweep row: \"" + line + "\"");
    r.g1 = g_over_hbar * k_hbar;
    r.n_realizations = static_cast<Index>(n);
    r.seed = seed;
    out.push_back(r);
  }
  return out;
}

void write_snapshot_file(const std::string& path,
                         const std::vector<FrameSnapshot<double>>& snaps,
                         double oscillator_length) {
  auto out = open_out(path);
  out << "# bectrans snapshots\n";
  out << "# columns: t_s q_m re_psi im_psi (per-block; psi in the co-moving "
         "gauge, units 1/sqrt(a0))\n";
  for (const auto& s : snaps) {
    out << "# t_s=" << format_full(s.t)
        << " frame_offset_m=" << format_full(s.frame_offset)
        << " frame_velocity_m_per_s=" << format_full(s.frame_velocity) << '\n';
    const auto& g = s.psi.grid;
    for (Index j = 0; j < g.size(); ++j) {
      const double q = s.frame_offset + g.x(j) * oscillator_length;
      out << format_full(s.t) << '\t' << format_full(q) << '\t'
          << format_full(s.psi.amp[j].real()) << '\t'
          << format_full(s.psi.amp[j].imag()) << '\n';
    }
    out << '\n';
  }
}

void write_com_track_file(
    const std::string& path,
    const std::vector<std::pair<double, double>>& com_track) {
  auto out = open_out(path);
  out << "# bectrans center-of-mass track\n";
  out << "# columns: t_s com_m\n";
  for (const auto& [t, q] : com_track)
    out << format_full(t) << '\t' << format_full(q) << '\n';
}

}  // namespace bectrans
