#pragma once

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>

#include "bectrans/grid.hpp"
#include "bectrans/types.hpp"
#include "bectrans/wavefunction.hpp"

namespace bectrans {

/// exp(i theta) for a real angle array.
template <class Scalar, class Derived>
ArrayXc<Scalar> unit_phase(const Eigen::ArrayBase<Derived>& theta) {
  return theta.unaryExpr(
      [](Scalar v) { return std::polar(Scalar(1), v); });
}

/// FFT plans, wavenumber table and scratch buffers for one grid size.
/// Not thread-safe; each worker keeps its own.
template <class Scalar>
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const Grid1D<Scalar>& grid)
      : grid_(grid), k_(grid.wavenumbers()), k2_(k_ * k_),
        freq_(grid.size()), tmp_(grid.size()) {}

  const Grid1D<Scalar>& grid() const { return grid_; }
  const ArrayX<Scalar>& k() const { return k_; }
  const ArrayX<Scalar>& k_squared() const { return k2_; }

  void forward(const ArrayXc<Scalar>& in, ArrayXc<Scalar>& out) {
    out.resize(in.size());
    fft_.fwd(out.data(), in.data(), static_cast<int>(in.size()));
  }
  void inverse(const ArrayXc<Scalar>& in, ArrayXc<Scalar>& out) {
    out.resize(in.size());
    fft_.inv(out.data(), in.data(), static_cast<int>(in.size()));
  }

  /// psi <- F^{-1}[ factor(k) . F[psi] ] for a precomputed diagonal factor.
  void apply_fourier_multiplier(ArrayXc<Scalar>& psi,
                                const ArrayXc<Scalar>& factor) {
    forward(psi, freq_);
    freq_ *= factor;
    inverse(freq_, psi);
  }

  /// Spectral second derivative.
  ArrayXc<Scalar> second_derivative(const ArrayXc<Scalar>& psi) {
    forward(psi, freq_);
    freq_ *= (-k2_).template cast<std::complex<Scalar>>();
    ArrayXc<Scalar> out(psi.size());
    inverse(freq_, out);
    return out;
  }

  /// Kinetic energy density sum: (1/2) sum k^2 |psi_k|^2 dx, via Parseval.
  Scalar kinetic_energy(const ArrayXc<Scalar>& psi) {
    forward(psi, freq_);
    const Scalar parseval = grid_.dx() / Scalar(grid_.size());
    return Scalar(0.5) * (k2_ * freq_.abs2()).sum() * parseval;
  }

  /// Exact spectral translation psi(x) -> psi(x - shift) on the periodic
  /// grid. Content moved past an edge wraps around, so callers keep shifts
  /// well inside the vacuum margin.
  void translate(ArrayXc<Scalar>& psi, Scalar shift) {
    forward(psi, freq_);
    freq_ *= unit_phase<Scalar>(-shift * k_);
    inverse(freq_, psi);
  }

 private:
  Grid1D<Scalar> grid_;
  ArrayX<Scalar> k_, k2_;
  Eigen::FFT<Scalar> fft_;
  ArrayXc<Scalar> freq_, tmp_;
};

/// Translated copy of a (typically real, compactly supported) state onto the
/// same grid. Uses the exact spectral shift when the moved support stays
/// inside the grid, and cubic interpolation with zero outside otherwise, so
/// far-off targets do not alias back in through the periodic wrap.
template <class Scalar>
Wavefunction<Scalar> translated(const Wavefunction<Scalar>& psi, Scalar shift,
                                SpectralWorkspace<Scalar>& ws) {
  const Scalar span = psi.grid.x_max() - psi.grid.x_min();
  Wavefunction<Scalar> out = psi;
  if (std::abs(shift) <= span / Scalar(4)) {
    ws.translate(out.amp, shift);
    return out;
  }
  const auto& g = psi.grid;
  for (Index j = 0; j < g.size(); ++j) {
    const Scalar xs = g.x(j) - shift;
    const Scalar u = (xs - g.x_min()) / g.dx();
    const auto i = static_cast<Index>(std::floor(u));
    if (i < 1 || i + 2 >= g.size()) {
      out.amp[j] = std::complex<Scalar>(0);
      continue;
    }
    // Catmull-Rom through the four surrounding samples.
    const Scalar f = u - Scalar(i);
    const auto pm1 = psi.amp[i - 1], p0 = psi.amp[i], p1 = psi.amp[i + 1],
               p2 = psi.amp[i + 2];
    out.amp[j] =
        p0 + Scalar(0.5) * f *
                 (p1 - pm1 +
                  f * (Scalar(2) * pm1 - Scalar(5) * p0 + Scalar(4) * p1 - p2 +
                       f * (Scalar(3) * (p0 - p1) + p2 - pm1)));
  }
  return out;
}

}  // namespace bectrans
