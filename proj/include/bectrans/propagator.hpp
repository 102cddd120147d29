#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "bectrans/errors.hpp"
#include "bectrans/metrics.hpp"
#include "bectrans/noise_types.hpp"
#include "bectrans/spectral.hpp"
#include "bectrans/trajectory.hpp"
#include "bectrans/trap_config.hpp"
#include "bectrans/wavefunction.hpp"

namespace bectrans {

// Time-dependent GPE propagation in a co-moving frame.
//
// The frame follows a reference path r(t) -- normally the designed
// condensate path, so the state barely moves on the grid; r = 0 recovers a
// plain lab-frame run. After the gauge transformation with boost m r'(t)
// the co-moving Hamiltonian reads, in oscillator units,
//
//     -1/2 d^2/dx^2 + U(x + r~ - x0(tau)) + (r~'' - a~(tau)) x + g |psi|^2,
//
// with U the trap shape, x0 the (possibly noise-shifted) trap center and a~
// an externally applied acceleration (the compensating-force term). Strang
// steps are aligned with the protocol breakpoints, so trap-path jumps land
// exactly on step boundaries and only open-interval branches are evaluated.

template <class Scalar>
struct PropagationOptions {
  Scalar dt = Scalar(0);            // s; <= 0 selects 1e-5 * t_f
  Index snapshot_stride = 0;        // steps between snapshots; 0 -> ~n/50
  bool record_snapshots = true;
  Scalar boundary_density_tol = Scalar(1e-6);  // of peak, frame-escape check
  Scalar quartic = Scalar(0);       // trap shape perturbation (dimensionless)
  const Trajectory<Scalar>* applied_accel = nullptr;  // q_ddot read as F/m, SI
  const NoiseRealization<Scalar>* noise = nullptr;    // trap-center jitter
  Scalar noise_lambda = Scalar(0);  // m
};

template <class Scalar>
struct FrameSnapshot {
  Scalar t{};                 // s
  Wavefunction<Scalar> psi;   // co-moving frame, oscillator units
  Scalar frame_offset{};      // m, r(t)
  Scalar frame_velocity{};    // m/s, r'(t)
};

template <class Scalar>
struct PropagationResult {
  std::vector<FrameSnapshot<Scalar>> snapshots;
  std::vector<std::pair<Scalar, Scalar>> com_track;  // (t s, <q>_lab m)
  Scalar norm_drift{};      // max | ||psi||^2 - 1 |
  Scalar final_fidelity{};  // vs ground state at the transport target
  FrameSnapshot<Scalar> final_state;
  Index total_steps{};
};

namespace detail {

// Nudge an exact segment-edge time into the open interval so piecewise
// evaluators pick the segment's own branch.
template <class Scalar>
Scalar into_segment(Scalar t, Scalar a, Scalar b) {
  const Scalar eps = (b - a) * Scalar(1e-9);
  return std::min(std::max(t, a + eps), b - eps);
}

template <class Scalar>
class ComovingStepper {
 public:
  ComovingStepper(const TrapConfig<Scalar>& cfg, const Trajectory<Scalar>& trap,
                  const Trajectory<Scalar>& frame,
                  const PropagationOptions<Scalar>& opt,
                  SpectralWorkspace<Scalar>& ws, Wavefunction<Scalar>& psi)
      : cfg_(cfg), trap_(trap), frame_(frame), opt_(opt), ws_(ws), psi_(psi),
        xs_(psi.grid.points()), v_(psi.grid.size()), phase_(psi.grid.size()),
        g_(cfg.coupling_dimensionless()) {}

  /// exp(-i w V(t) psi) applied in place; `w` is the scaled-time weight and
  /// `noise_time` selects the jitter cell (the step midpoint).
  void kick(Scalar t, Scalar w, Scalar noise_time) {
    const auto tr = trap_.at_open(t);
    const auto fr = frame_.at_open(t);
    const Scalar a0 = cfg_.oscillator_length;
    const Scalar w0 = cfg_.omega0;
    Scalar x0 = tr.q / a0;
    if (opt_.noise) {
      const auto& nz = *opt_.noise;
      const auto cell = std::min<Index>(
          static_cast<Index>(w0 * noise_time / nz.dt_scaled),
          nz.samples.size() - 1);
      x0 += opt_.noise_lambda / a0 * nz.samples[cell];
    }
    const Scalar shift = fr.q / a0 - x0;
    const Scalar slope =
        fr.q_ddot / (a0 * w0 * w0) -
        (opt_.applied_accel
             ? opt_.applied_accel->at_open(t).q_ddot / (a0 * w0 * w0)
             : Scalar(0));
    v_ = xs_ + shift;
    if (opt_.quartic != Scalar(0))
      v_ = v_.square() / Scalar(2) + opt_.quartic * v_.square().square();
    else
      v_ = v_.square() / Scalar(2);
    v_ += slope * xs_ + g_ * psi_.amp.abs2();
    phase_ = unit_phase<Scalar>(-w * v_);
    psi_.amp *= phase_;
  }

  void drift() { ws_.apply_fourier_multiplier(psi_.amp, kin_factor_); }

  void set_dtau(Scalar dtau) {
    kin_factor_ = unit_phase<Scalar>(-dtau / 2 * ws_.k_squared());
  }

 private:
  const TrapConfig<Scalar>& cfg_;
  const Trajectory<Scalar>& trap_;
  const Trajectory<Scalar>& frame_;
  const PropagationOptions<Scalar>& opt_;
  SpectralWorkspace<Scalar>& ws_;
  Wavefunction<Scalar>& psi_;
  ArrayX<Scalar> xs_;
  ArrayX<Scalar> v_;
  ArrayXc<Scalar> phase_;
  ArrayXc<Scalar> kin_factor_;
  Scalar g_;
};

}  // namespace detail

/// Propagate psi0 (given in the frame gauge at t = 0) under the trap path
/// and score the final state against the ground state `chi` placed at the
/// transport target cfg.d. chi must live on the propagation grid.
template <class Scalar>
PropagationResult<Scalar> propagate(const TrapConfig<Scalar>& cfg,
                                    const Trajectory<Scalar>& trap,
                                    const Trajectory<Scalar>& frame,
                                    const Wavefunction<Scalar>& psi0,
                                    const Wavefunction<Scalar>& chi,
                                    const PropagationOptions<Scalar>& opt = {}) {
  const Scalar t_f = trap.t_f();
  if (!(t_f > Scalar(0))) throw DomainError("propagate: trap path has t_f <= 0");
  const Scalar a0 = cfg.oscillator_length;
  const Scalar w0 = cfg.omega0;
  const Scalar dt = opt.dt > Scalar(0) ? opt.dt : Scalar(1e-5) * t_f;
  if (!(dt * w0 < Scalar(0.05)))
    throw DomainError("propagate: dt * omega0 must stay below 0.05");
  if (std::abs(norm_squared(psi0) - Scalar(1)) > Scalar(1e-6))
    throw DomainError("propagate: psi0 is not normalized");
  if (!(chi.grid == psi0.grid))
    throw DomainError("propagate: reference state lives on a different grid");

  const Grid1D<Scalar>& grid = psi0.grid;
  SpectralWorkspace<Scalar> ws(grid);
  const ArrayX<Scalar> xs = grid.points();

  // Segment layout: steps never straddle a protocol breakpoint.
  std::vector<Scalar> edges{Scalar(0)};
  for (Scalar b : merged_breakpoints(trap, frame))
    if (b > Scalar(0) && b < t_f) edges.push_back(b);
  edges.push_back(t_f);

  Index total_steps = 0;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s)
    total_steps += std::max<Index>(
        1, static_cast<Index>(std::llround((edges[s + 1] - edges[s]) / dt)));
  const Index stride = opt.snapshot_stride > 0
                           ? opt.snapshot_stride
                           : std::max<Index>(1, total_steps / 50);

  Wavefunction<Scalar> psi = psi0;
  detail::ComovingStepper<Scalar> stepper(cfg, trap, frame, opt, ws, psi);
  PropagationResult<Scalar> out;
  out.com_track.reserve(static_cast<std::size_t>(total_steps) + 1);

  const auto record_com = [&](Scalar t) {
    const Scalar com = (xs * psi.amp.abs2()).sum() * grid.dx();
    out.com_track.emplace_back(t, com * a0 + frame.at_open(t).q);
  };
  record_com(Scalar(0));
  if (opt.record_snapshots) {
    const auto fr0 = frame.at_open(Scalar(0));
    out.snapshots.push_back({Scalar(0), psi, fr0.q, fr0.q_dot});
  }

  Index step = 0;
  Scalar norm_drift = 0;
  Scalar peak_scale = psi.density().maxCoeff();
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const Scalar a = edges[s], b = edges[s + 1];
    const auto n =
        std::max<Index>(1, static_cast<Index>(std::llround((b - a) / dt)));
    const Scalar dt_s = (b - a) / Scalar(n);
    const Scalar dtau = w0 * dt_s;
    stepper.set_dtau(dtau);
    for (Index j = 0; j < n; ++j, ++step) {
      const Scalar t0 = a + Scalar(j) * dt_s;
      const Scalar t1 = j + 1 == n ? b : t0 + dt_s;
      const Scalar t_mid = (t0 + t1) / 2;
      const bool segment_end = (j + 1 == n);
      const bool at_snapshot =
          ((step + 1) % stride == 0) || (step + 1 == total_steps);
      if (opt.noise) {
        // The trap jitter is frozen over each step, so both half kicks read
        // the midpoint cell and steps never merge.
        stepper.kick(detail::into_segment(t0, a, b), dtau / 2, t_mid);
        stepper.drift();
      } else {
        if (j == 0) stepper.kick(detail::into_segment(t0, a, b), dtau / 2, t_mid);
        stepper.drift();
      }
      // Potential kicks preserve |psi|, so density observables taken right
      // after the drift already equal the end-of-step values.
      const Scalar n2 = psi.amp.abs2().sum() * grid.dx();
      if (!std::isfinite(n2))
        throw StabilityError("propagate: non-finite amplitudes", step);
      norm_drift = std::max(norm_drift, std::abs(n2 - Scalar(1)));
      record_com(t1);
      const bool close_step = opt.noise || segment_end || at_snapshot;
      stepper.kick(detail::into_segment(t1, a, b), close_step ? dtau / 2 : dtau,
                   t_mid);
      if (at_snapshot || segment_end) {
        const ArrayX<Scalar> dens = psi.density();
        const Scalar peak = dens.maxCoeff();
        peak_scale = std::max(peak_scale, peak);
        if (std::max(dens[0], dens[grid.size() - 1]) >
            opt.boundary_density_tol * peak_scale)
          throw GridError("propagate: state reached the frame boundary");
        if (opt.record_snapshots && at_snapshot) {
          const auto fr = frame.at_open(t1);
          out.snapshots.push_back({t1, psi, fr.q, fr.q_dot});
        }
        // A snapshot closed the step mid-segment; reopen the next one.
        if (!opt.noise && at_snapshot && !segment_end)
          stepper.kick(detail::into_segment(t1, a, b), dtau / 2,
                       t_mid + dt_s);
      }
    }
  }

  out.total_steps = step;
  out.norm_drift = norm_drift;
  const auto fr_end = frame.at_open(t_f);
  out.final_state = {t_f, psi, fr_end.q, fr_end.q_dot};

  // Score against the ground state parked at the transport target.
  const Scalar target_center = (cfg.d - fr_end.q) / a0;
  const Scalar target_boost = -fr_end.q_dot / (a0 * w0);
  Wavefunction<Scalar> target =
      displaced_reference(chi, target_center, target_boost, ws);
  out.final_fidelity = fidelity(normalized(target), normalized(psi));
  return out;
}

/// Lab-gauge state for a frame snapshot: grid coordinates stay relative to
/// the frame origin, the gauge boost is undone.
template <class Scalar>
Wavefunction<Scalar> with_lab_phase(const FrameSnapshot<Scalar>& snap,
                                    const TrapConfig<Scalar>& cfg) {
  Wavefunction<Scalar> out = snap.psi;
  const Scalar boost = snap.frame_velocity / (cfg.oscillator_length * cfg.omega0);
  if (boost != Scalar(0))
    out.amp *= unit_phase<Scalar>(boost * out.grid.points());
  return out;
}

}  // namespace bectrans
