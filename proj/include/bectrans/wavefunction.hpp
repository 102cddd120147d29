#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "bectrans/errors.hpp"
#include "bectrans/grid.hpp"
#include "bectrans/types.hpp"

namespace bectrans {

/// Complex field on a Grid1D. Discrete norm is the rectangle rule
/// sum |psi_j|^2 dx, which is spectrally exact on the periodic grid.
template <class Scalar>
struct Wavefunction {
  Grid1D<Scalar> grid;
  ArrayXc<Scalar> amp;

  Wavefunction() = default;
  Wavefunction(Grid1D<Scalar> g, ArrayXc<Scalar> a)
      : grid(g), amp(std::move(a)) {
    if (amp.size() != grid.size())
      throw DomainError("Wavefunction: amplitude size does not match grid");
  }

  static Wavefunction zero(const Grid1D<Scalar>& g) {
    return Wavefunction(g, ArrayXc<Scalar>::Zero(g.size()));
  }

  Index size() const { return grid.size(); }
  ArrayX<Scalar> density() const { return amp.abs2(); }
};

template <class Scalar>
Scalar norm_squared(const Wavefunction<Scalar>& psi) {
  return psi.amp.abs2().sum() * psi.grid.dx();
}

/// Rescale to unit discrete norm, leaving phases untouched. A state that is
/// already normalized to a few ulp is returned unchanged, which makes the
/// operation exactly idempotent.
template <class Scalar>
Wavefunction<Scalar> normalized(const Wavefunction<Scalar>& psi) {
  const Scalar n2 = norm_squared(psi);
  if (!(n2 > Scalar(0)))
    throw DomainError("normalized: wavefunction has zero norm");
  Wavefunction<Scalar> out = psi;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  if (std::abs(n2 - Scalar(1)) > Scalar(8) * eps)
    out.amp /= std::sqrt(n2);
  return out;
}

/// <a|b> with the discrete measure; grids must match.
template <class Scalar>
std::complex<Scalar> overlap(const Wavefunction<Scalar>& a,
                             const Wavefunction<Scalar>& b) {
  if (!(a.grid == b.grid))
    throw DomainError("overlap: wavefunctions live on different grids");
  return (a.amp.conjugate() * b.amp).sum() * a.grid.dx();
}

/// Center of mass <x> of a normalized state; caller supplies the grid points
/// when they are already at hand.
template <class Scalar>
Scalar center_of_mass(const Wavefunction<Scalar>& psi,
                      const ArrayX<Scalar>& xs) {
  return (xs * psi.amp.abs2()).sum() * psi.grid.dx();
}

template <class Scalar>
Scalar center_of_mass(const Wavefunction<Scalar>& psi) {
  return center_of_mass(psi, psi.grid.points());
}

}  // namespace bectrans
