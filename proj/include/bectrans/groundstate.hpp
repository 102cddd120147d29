#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <utility>

#include "bectrans/errors.hpp"
#include "bectrans/spectral.hpp"
#include "bectrans/trap_config.hpp"
#include "bectrans/types.hpp"
#include "bectrans/wavefunction.hpp"

namespace bectrans {

// Ground mode of the stationary 1D condensate in the trap frame. Everything
// here is in oscillator units: lengths in a0, energies and mu in
// hbar*omega0, the coupling as cfg.coupling_dimensionless().

template <class Scalar>
struct EnergyTerms {
  Scalar kinetic{};
  Scalar potential{};
  Scalar interaction{};  // (g/2) int |chi|^4

  Scalar total() const { return kinetic + potential + interaction; }
  /// Chemical potential: the interaction enters with double weight.
  Scalar mu() const { return kinetic + potential + Scalar(2) * interaction; }
  /// Scaling identity 2T - 2V + I, zero at a stationary point.
  Scalar virial() const {
    return Scalar(2) * kinetic - Scalar(2) * potential + interaction;
  }
};

template <class Scalar>
struct StationaryState {
  Wavefunction<Scalar> chi;   // real, non-negative, unit norm
  Scalar mu{};                // hbar*omega0
  EnergyTerms<Scalar> energies;
  Scalar residual{};          // ||(H - mu) chi|| at convergence
  Scalar g_dimensionless{};
};

/// Default simulation grid: n points spanning +-12 max(a0, Thomas-Fermi
/// radius), wide enough for boundary decay in both the ideal and the
/// strongly interacting regime.
template <class Scalar>
Scalar thomas_fermi_mu(Scalar g_dimensionless) {
  return Scalar(0.5) *
         std::pow(Scalar(1.5) * g_dimensionless, Scalar(2) / Scalar(3));
}

template <class Scalar>
Grid1D<Scalar> default_grid(const TrapConfig<Scalar>& cfg,
                            Index n_points = 1024) {
  const Scalar g = cfg.coupling_dimensionless();
  const Scalar r_tf =
      g > Scalar(0) ? std::sqrt(Scalar(2) * thomas_fermi_mu(g)) : Scalar(0);
  return Grid1D<Scalar>::centered(Scalar(12) * std::max(Scalar(1), r_tf),
                                  n_points);
}

/// Harmonic trap with an optional quartic perturbation, x^2/2 + kappa x^4.
template <class Scalar>
ArrayX<Scalar> trap_potential(const Grid1D<Scalar>& grid, Scalar center = 0,
                              Scalar quartic = 0) {
  ArrayX<Scalar> v(grid.size());
  for (Index j = 0; j < grid.size(); ++j) {
    const Scalar y = grid.x(j) - center;
    v[j] = y * y / Scalar(2) + quartic * y * y * y * y;
  }
  return v;
}

template <class Scalar>
EnergyTerms<Scalar> energy_terms(const Wavefunction<Scalar>& chi,
                                 const ArrayX<Scalar>& potential, Scalar g,
                                 SpectralWorkspace<Scalar>& ws) {
  EnergyTerms<Scalar> e;
  const ArrayX<Scalar> n = chi.density();
  const Scalar dx = chi.grid.dx();
  e.kinetic = ws.kinetic_energy(chi.amp);
  e.potential = (potential * n).sum() * dx;
  e.interaction = g / Scalar(2) * (n * n).sum() * dx;
  return e;
}

/// Energy split for the default centered harmonic trap.
template <class Scalar>
EnergyTerms<Scalar> energy_decomposition(const Wavefunction<Scalar>& chi,
                                         const TrapConfig<Scalar>& cfg) {
  SpectralWorkspace<Scalar> ws(chi.grid);
  return energy_terms(chi, trap_potential(chi.grid), cfg.coupling_dimensionless(),
                      ws);
}

/// ||(H_GP - mu) chi|| with mu the Rayleigh quotient; chi must be normalized.
template <class Scalar>
std::pair<Scalar, Scalar> gpe_residual(const Wavefunction<Scalar>& chi,
                                       const ArrayX<Scalar>& potential,
                                       Scalar g, SpectralWorkspace<Scalar>& ws) {
  const auto e = energy_terms(chi, potential, g, ws);
  const Scalar mu = e.mu();
  const ArrayXc<Scalar> h =
      Scalar(-0.5) * ws.second_derivative(chi.amp) +
      chi.amp * (potential + g * chi.density() - mu)
                    .template cast<std::complex<Scalar>>();
  const Scalar rn = std::sqrt(h.abs2().sum() * chi.grid.dx());
  return {rn, mu};
}

/// One second-order imaginary-time split step with renormalization; caches
/// the kinetic decay factor for its step size.
template <class Scalar>
class RelaxationStepper {
 public:
  RelaxationStepper(SpectralWorkspace<Scalar>& ws, const ArrayX<Scalar>& potential,
                    Scalar g)
      : ws_(ws), potential_(potential), g_(g) {}

  void set_dtau(Scalar dtau) {
    if (dtau == dtau_) return;
    dtau_ = dtau;
    kin_factor_ = (-(dtau / Scalar(2)) * ws_.k_squared())
                      .exp()
                      .template cast<std::complex<Scalar>>();
  }
  Scalar dtau() const { return dtau_; }

  void step(Wavefunction<Scalar>& chi) const {
    const auto half = [&] {
      chi.amp *= (-(dtau_ / Scalar(2)) * (potential_ + g_ * chi.density()))
                     .exp()
                     .template cast<std::complex<Scalar>>();
    };
    half();
    ws_.apply_fourier_multiplier(chi.amp, kin_factor_);
    half();
    chi.amp /= std::sqrt(norm_squared(chi));
  }

 private:
  SpectralWorkspace<Scalar>& ws_;
  const ArrayX<Scalar>& potential_;
  Scalar g_;
  Scalar dtau_{-1};
  ArrayXc<Scalar> kin_factor_;
};

template <class Scalar>
struct GroundStateOptions {
  Scalar tol = Scalar(1e-8);      // residual target, hbar*omega0
  Scalar dtau0 = Scalar(0);       // 0 -> automatic
  Scalar dtau_min = Scalar(1e-7);
  Index max_steps = 400000;
  Index check_every = 16;
  Scalar quartic = Scalar(0);     // trap perturbation (stretch tests)
  Scalar boundary_tol = Scalar(1e-8);
};

/// Imaginary-time relaxation to the stationary state. The step size is
/// halved whenever the residual stops improving, so the splitting bias is
/// walked down until the requested residual is met.
template <class Scalar>
StationaryState<Scalar> solve_ground_state(
    const TrapConfig<Scalar>& cfg, const Grid1D<Scalar>& grid,
    const GroundStateOptions<Scalar>& opts = {}) {
  if (!(opts.tol > Scalar(0)))
    throw DomainError("solve_ground_state: tol must be > 0");
  const Scalar g = cfg.coupling_dimensionless();
  SpectralWorkspace<Scalar> ws(grid);
  const ArrayX<Scalar> v = trap_potential(grid, Scalar(0), opts.quartic);

  Wavefunction<Scalar> chi = Wavefunction<Scalar>::zero(grid);
  const Scalar mu_tf = g > Scalar(0) ? thomas_fermi_mu(g) : Scalar(0.5);
  if (g < Scalar(5)) {
    for (Index j = 0; j < grid.size(); ++j)
      chi.amp[j] = std::exp(-grid.x(j) * grid.x(j) / Scalar(2));
  } else {
    for (Index j = 0; j < grid.size(); ++j)
      chi.amp[j] = std::sqrt(std::max(mu_tf - v[j], Scalar(0)) / g);
  }
  chi.amp /= std::sqrt(norm_squared(chi));

  RelaxationStepper<Scalar> stepper(ws, v, g);
  stepper.set_dtau(opts.dtau0 > Scalar(0)
                       ? opts.dtau0
                       : std::min(Scalar(0.1),
                                  Scalar(0.5) / std::max(Scalar(1), mu_tf)));
  Scalar residual = Scalar(0), mu = Scalar(0);
  Scalar plateau_ref = std::numeric_limits<Scalar>::max();
  Index steps = 0;
  while (true) {
    for (Index i = 0; i < opts.check_every; ++i) stepper.step(chi);
    steps += opts.check_every;
    std::tie(residual, mu) = gpe_residual(chi, v, g, ws);
    if (residual < opts.tol) break;
    if (steps > opts.max_steps)
      throw ConvergenceError("solve_ground_state: no convergence within step budget",
                             static_cast<double>(residual));
    if (residual > plateau_ref * Scalar(0.98)) {
      // Residual has hit the splitting floor for this step size.
      const Scalar next = stepper.dtau() / Scalar(2);
      plateau_ref = std::numeric_limits<Scalar>::max();
      if (next < opts.dtau_min)
        throw ConvergenceError(
            "solve_ground_state: residual floor above tolerance",
            static_cast<double>(residual));
      stepper.set_dtau(next);
    } else {
      plateau_ref = residual;
    }
  }

  // Relaxation preserves realness; fix the overall sign and drop the
  // identically zero imaginary part.
  Scalar peak = 0;
  Index peak_j = 0;
  for (Index j = 0; j < grid.size(); ++j)
    if (std::abs(chi.amp[j].real()) > peak) {
      peak = std::abs(chi.amp[j].real());
      peak_j = j;
    }
  if (chi.amp[peak_j].real() < Scalar(0)) chi.amp = -chi.amp;
  chi.amp = chi.amp.real().template cast<std::complex<Scalar>>();
  chi = normalized(chi);

  const Scalar edge =
      std::max(std::abs(chi.amp[0]), std::abs(chi.amp[grid.size() - 1]));
  if (edge > opts.boundary_tol * peak)
    throw GridError("solve_ground_state: state does not decay at the grid edge; "
                    "grid too small");

  StationaryState<Scalar> out;
  out.chi = std::move(chi);
  out.energies = energy_terms(out.chi, v, g, ws);
  out.mu = out.energies.mu();
  out.residual = residual;
  out.g_dimensionless = g;
  return out;
}

}  // namespace bectrans
