#pragma once

#include <cmath>
#include <vector>

#include "bectrans/groundstate.hpp"
#include "bectrans/quadrature.hpp"
#include "bectrans/spectral.hpp"
#include "bectrans/trajectory.hpp"
#include "bectrans/trap_config.hpp"

namespace bectrans {

/// The shape-invariant transport solution of the time-dependent GPE: the
/// stationary profile chi rigidly following the classical path q_c, dressed
/// with the boost phase m q_c' q, the chemical-potential rotation and the
/// action-like integral of (m/2)(q_c'^2 - omega0^2 q_c^2) + f, where
/// f = m omega0^2 q0^2 / 2 completes the moving-trap potential.
template <class Scalar>
class TransportMode {
 public:
  TransportMode(StationaryState<Scalar> ground, Trajectory<Scalar> condensate,
                Trajectory<Scalar> trap, TrapConfig<Scalar> cfg)
      : ground_(std::move(ground)), q_c_(std::move(condensate)),
        trap_(std::move(trap)), cfg_(std::move(cfg)) {
    // Tabulate the phase integral on the condensate path's own nodes.
    nodes_.reserve(q_c_.samples().size());
    for (const auto& p : q_c_.samples()) nodes_.push_back(p.t);
    phase_table_ = cumulative_integral(nodes_, [this](Scalar t) {
      return phase_integrand(t);
    });
  }

  const StationaryState<Scalar>& ground() const { return ground_; }
  const Trajectory<Scalar>& condensate_path() const { return q_c_; }

  /// Action-like phase integral Phi(t), dimensionless (units of hbar).
  Scalar phase_integral(Scalar t) const {
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    const auto i = static_cast<std::size_t>(
        std::max<std::ptrdiff_t>(0, it - nodes_.begin() - 1));
    const Scalar t0 = nodes_[i];
    // Simpson tail from the last node below t.
    const Scalar h = t - t0;
    if (h == Scalar(0)) return phase_table_[i];
    return phase_table_[i] +
           h / Scalar(6) *
               (phase_integrand(t0) + Scalar(4) * phase_integrand(t0 + h / 2) +
                phase_integrand(t));
  }

  /// Mode wavefunction at time t in a co-moving frame at (frame_offset,
  /// frame_velocity), SI. `frame_gauge_phase` is the accumulated integral of
  /// (1/2) r'^2 in scaled units for phase-sensitive comparisons; pass 0 when
  /// only moduli matter. The lab-frame state is the special case
  /// frame_offset = frame_velocity = gauge = 0.
  Wavefunction<Scalar> state_in_frame(Scalar t, Scalar frame_offset,
                                      Scalar frame_velocity,
                                      Scalar frame_gauge_phase,
                                      SpectralWorkspace<Scalar>& ws) const {
    const Scalar a0 = cfg_.oscillator_length;
    const Scalar w0 = cfg_.omega0;
    const auto qc = q_c_.at_open(t);
    const Scalar xc = qc.q / a0;
    const Scalar vc = qc.q_dot / (a0 * w0);
    const Scalar r = frame_offset / a0;
    const Scalar vr = frame_velocity / (a0 * w0);
    Wavefunction<Scalar> psi = translated(ground_.chi, xc - r, ws);
    const Scalar theta = -ground_.mu * (w0 * t) + vc * r - phase_integral(t) -
                         frame_gauge_phase;
    psi.amp *= unit_phase<Scalar>((vc - vr) * ws.grid().points() + theta);
    return psi;
  }

  Wavefunction<Scalar> state_lab(Scalar t, SpectralWorkspace<Scalar>& ws) const {
    return state_in_frame(t, Scalar(0), Scalar(0), Scalar(0), ws);
  }

 private:
  Scalar phase_integrand(Scalar t) const {
    const Scalar a0 = cfg_.oscillator_length;
    const Scalar w0 = cfg_.omega0;
    const auto qc = q_c_.at_open(t);
    const Scalar xc = qc.q / a0;
    const Scalar vc = qc.q_dot / (a0 * w0);
    const Scalar x0 = trap_.at_open(t).q / a0;
    // d(Phi)/d(tau) in scaled time; the w0 factor converts to d/dt.
    return w0 * ((vc * vc - xc * xc) / 2 + x0 * x0 / 2);
  }

  StationaryState<Scalar> ground_;
  Trajectory<Scalar> q_c_;
  Trajectory<Scalar> trap_;
  TrapConfig<Scalar> cfg_;
  std::vector<Scalar> nodes_;
  std::vector<Scalar> phase_table_;
};

/// Accumulated frame gauge phase int (1/2) r'^2 dtau (scaled units) at the
/// given times, for phase-coherent mode-vs-propagation comparisons.
template <class Scalar>
std::vector<Scalar> frame_gauge_phases(const Trajectory<Scalar>& frame,
                                       const TrapConfig<Scalar>& cfg,
                                       const std::vector<Scalar>& times) {
  const Scalar a0 = cfg.oscillator_length;
  const Scalar w0 = cfg.omega0;
  std::vector<Scalar> nodes;
  nodes.reserve(frame.samples().size());
  for (const auto& p : frame.samples()) nodes.push_back(p.t);
  const auto integrand = [&](Scalar t) {
    const Scalar vr = frame.at_open(t).q_dot / (a0 * w0);
    return w0 * vr * vr / 2;
  };
  const auto table = cumulative_integral(nodes, integrand);
  std::vector<Scalar> out;
  out.reserve(times.size());
  for (Scalar t : times) {
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    const auto i = static_cast<std::size_t>(
        std::max<std::ptrdiff_t>(0, it - nodes.begin() - 1));
    const Scalar h = t - nodes[i];
    Scalar v = table[i];
    if (h != Scalar(0))
      v += h / Scalar(6) *
           (integrand(nodes[i]) + Scalar(4) * integrand(nodes[i] + h / 2) +
            integrand(t));
    out.push_back(v);
  }
  return out;
}

}  // namespace bectrans
