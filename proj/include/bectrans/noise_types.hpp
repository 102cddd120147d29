#pragma once

#include <cstdint>

#include "bectrans/types.hpp"

namespace bectrans {

/// One sampled white-noise path in scaled time tau = omega0 t: independent
/// Gaussian cell values of variance 1/dt_scaled, so that cell integrals have
/// variance dt_scaled (unit-intensity white noise).
template <class Scalar>
struct NoiseRealization {
  std::uint64_t seed{};
  Scalar dt_scaled{};
  ArrayX<Scalar> samples;

  Scalar duration() const { return dt_scaled * Scalar(samples.size()); }
};

/// The two response integrals of a noise path against the oscillator kernel,
///   beta     = int_0^Theta zeta(tau) sin(Theta - tau) dtau,
///   beta_dot = int_0^Theta zeta(tau) cos(Theta - tau) dtau,
/// both dimensionless; the physical velocity factor carries one extra omega0.
template <class Scalar>
struct BetaPair {
  Scalar beta{};
  Scalar beta_dot_scaled{};
  Scalar t_F{};  // s
};

/// Monte Carlo summary for one (lambda, g1, t_f) noise point.
template <class Scalar>
struct FidelityRecord {
  Scalar lambda{};         // m
  Scalar g1{};             // J m
  Scalar t_f{};            // s
  Index n_realizations{};
  Scalar mean_fidelity{};
  Scalar std_error{};
  std::uint64_t seed{};
};

}  // namespace bectrans
