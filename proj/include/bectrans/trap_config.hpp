#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "bectrans/constants.hpp"
#include "bectrans/errors.hpp"

namespace bectrans {

/// Physical parameters of the 1D transport problem plus the derived
/// harmonic-oscillator units. All solver-facing code works in those units
/// (lengths in oscillator_length, times in 1/omega0, energies in
/// hbar*omega0); SI values appear only at I/O boundaries.
template <class Scalar>
struct TrapConfig {
  Scalar mass{};                // kg
  Scalar omega0{};              // rad/s
  Scalar g1{};                  // J m   (1D coupling)
  Scalar d{};                   // m     (transport distance)
  Scalar hbar{};                // J s
  Scalar oscillator_length{};   // m, sqrt(hbar / (mass * omega0))

  // The coupling is quoted in the experimental convention g1/hbar (m/s).
  static TrapConfig from_si(Scalar mass, Scalar omega0, Scalar g1_over_hbar,
                            Scalar d, Scalar hbar = Scalar(k_hbar)) {
    if (!(mass > Scalar(0))) throw DomainError("TrapConfig: mass must be > 0");
    if (!(omega0 > Scalar(0))) throw DomainError("TrapConfig: omega0 must be > 0");
    if (!(g1_over_hbar >= Scalar(0))) throw DomainError("TrapConfig: g1 must be >= 0");
    if (!(d >= Scalar(0))) throw DomainError("TrapConfig: d must be >= 0");
    TrapConfig cfg;
    cfg.mass = mass;
    cfg.omega0 = omega0;
    cfg.g1 = g1_over_hbar * hbar;
    cfg.d = d;
    cfg.hbar = hbar;
    cfg.oscillator_length = std::sqrt(hbar / (mass * omega0));
    return cfg;
  }

  Scalar length_unit() const { return oscillator_length; }
  Scalar time_unit() const { return Scalar(1) / omega0; }
  Scalar energy_unit() const { return hbar * omega0; }
  Scalar velocity_unit() const { return oscillator_length * omega0; }
  Scalar acceleration_unit() const { return oscillator_length * omega0 * omega0; }

  /// g1 in units of hbar*omega0*oscillator_length.
  Scalar coupling_dimensionless() const {
    return g1 / (hbar * omega0 * oscillator_length);
  }
  /// Transport distance in oscillator lengths.
  Scalar distance_dimensionless() const { return d / oscillator_length; }
};

enum class Unit {
  length,             // m        -> / a0
  time,               // s        -> * omega0
  angular_frequency,  // rad/s    -> / omega0
  energy,             // J        -> / (hbar omega0)
  velocity,           // m/s      -> / (a0 omega0)
  acceleration,       // m/s^2    -> / (a0 omega0^2)
  coupling,           // J m      -> / (hbar omega0 a0)
};

inline Unit unit_from_name(std::string_view name) {
  if (name == "length") return Unit::length;
  if (name == "time") return Unit::time;
  if (name == "angular_frequency") return Unit::angular_frequency;
  if (name == "energy") return Unit::energy;
  if (name == "velocity") return Unit::velocity;
  if (name == "acceleration") return Unit::acceleration;
  if (name == "coupling") return Unit::coupling;
  throw ConfigError("unknown unit tag: \"" + std::string(name) + "\"");
}

template <class Scalar>
Scalar unit_scale(const TrapConfig<Scalar>& cfg, Unit unit) {
  switch (unit) {
    case Unit::length: return cfg.length_unit();
    case Unit::time: return cfg.time_unit();
    case Unit::angular_frequency: return Scalar(1) / cfg.omega0;
    case Unit::energy: return cfg.energy_unit();
    case Unit::velocity: return cfg.velocity_unit();
    case Unit::acceleration: return cfg.acceleration_unit();
    case Unit::coupling: return cfg.hbar * cfg.omega0 * cfg.oscillator_length;
  }
  throw ConfigError("unknown unit tag");
}

template <class Scalar>
Scalar to_dimensionless(const TrapConfig<Scalar>& cfg, Scalar value, Unit unit) {
  return value / unit_scale(cfg, unit);
}

template <class Scalar>
Scalar from_dimensionless(const TrapConfig<Scalar>& cfg, Scalar value, Unit unit) {
  return value * unit_scale(cfg, unit);
}

}  // namespace bectrans
