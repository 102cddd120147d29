#pragma once

#include "bectrans/errors.hpp"
#include "bectrans/types.hpp"

namespace bectrans {

/// Uniform periodic 1D grid with x_j = x_min + j*dx, j = 0..n-1.
/// n is required to be a power of two so that dx * n == x_max - x_min holds
/// exactly in floating point and the spectral transforms stay radix-2.
template <class Scalar>
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(Scalar x_min, Scalar x_max, Index n_points)
      : x_min_(x_min), x_max_(x_max), n_(n_points) {
    if (!(x_max > x_min)) throw DomainError("Grid1D: x_max must exceed x_min");
    if (n_ < 2 || (n_ & (n_ - 1)) != 0)
      throw DomainError("Grid1D: n_points must be a power of two >= 2");
    dx_ = (x_max_ - x_min_) / Scalar(n_);
  }

  /// Grid of n points symmetric about 0, spanning [-halfwidth, halfwidth).
  static Grid1D centered(Scalar halfwidth, Index n_points) {
    return Grid1D(-halfwidth, halfwidth, n_points);
  }

  Scalar x_min() const { return x_min_; }
  Scalar x_max() const { return x_max_; }
  Index size() const { return n_; }
  Scalar dx() const { return dx_; }
  Scalar x(Index j) const { return x_min_ + Scalar(j) * dx_; }

  ArrayX<Scalar> points() const {
    ArrayX<Scalar> xs(n_);
    for (Index j = 0; j < n_; ++j) xs[j] = x(j);
    return xs;
  }

  /// Angular wavenumbers in FFT ordering: k_j = 2*pi*j/(n*dx) for j < n/2,
  /// negative branch above.
  ArrayX<Scalar> wavenumbers() const {
    const Scalar dk = Scalar(2) * Scalar(EIGEN_PI) / (Scalar(n_) * dx_);
    ArrayX<Scalar> ks(n_);
    for (Index j = 0; j < n_; ++j)
      ks[j] = dk * Scalar(j < n_ / 2 ? j : j - n_);
    return ks;
  }

  friend bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.x_min_ == b.x_min_ && a.x_max_ == b.x_max_ && a.n_ == b.n_;
  }

 private:
  Scalar x_min_{0}, x_max_{0};
  Index n_{0};
  Scalar dx_{0};
};

}  // namespace bectrans
