#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "bectrans/groundstate.hpp"
#include "bectrans/spectral.hpp"
#include "bectrans/wavefunction.hpp"

namespace bectrans {

/// |<a|b>| for unit-norm states on the same grid; phase invariant and
/// clamped against rounding overshoot.
template <class Scalar>
Scalar fidelity(const Wavefunction<Scalar>& a, const Wavefunction<Scalar>& b) {
  const Scalar f = std::abs(overlap(a, b));
  return std::min(f, Scalar(1));
}

/// Ground state translated to `center` and boosted to `velocity` (oscillator
/// units), the reference a transported state is compared against.
template <class Scalar>
Wavefunction<Scalar> displaced_reference(const Wavefunction<Scalar>& chi,
                                         Scalar center, Scalar velocity,
                                         SpectralWorkspace<Scalar>& ws) {
  Wavefunction<Scalar> target = translated(chi, center, ws);
  if (velocity != Scalar(0))
    target.amp *= unit_phase<Scalar>(velocity * ws.grid().points());
  return target;
}

/// Gross-Pitaevskii energy of psi in a trap centered at `trap_center`
/// (oscillator units) minus the ground-state energy. psi must carry its lab
/// phase (no leftover frame boost).
template <class Scalar>
Scalar excitation_energy(const Wavefunction<Scalar>& psi,
                         const StationaryState<Scalar>& ground,
                         Scalar trap_center, Scalar quartic = 0) {
  SpectralWorkspace<Scalar> ws(psi.grid);
  const auto e = energy_terms(psi, trap_potential(psi.grid, trap_center, quartic),
                              ground.g_dimensionless, ws);
  return e.total() - ground.energies.total();
}

}  // namespace bectrans
