#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "bectrans/classical.hpp"
#include "bectrans/trajectory.hpp"

namespace bectrans {

// ---------------------------------------------------------------------------
// Direct protocol: trapezoidal velocity ramp. The trap speed rises linearly
// over the first quarter of the distance, stays at v_m for half, and ramps
// back down over the last quarter.
// ---------------------------------------------------------------------------

template <class Scalar>
struct DirectProtocol {
  Scalar d{};    // m
  Scalar t_f{};  // s
  Scalar v_m{};  // m/s, 3d/(2 t_f)

  static DirectProtocol make(Scalar d, Scalar t_f) {
    if (!(t_f > Scalar(0))) throw DomainError("DirectProtocol: t_f must be > 0");
    if (!(d > Scalar(0))) throw DomainError("DirectProtocol: d must be > 0");
    return {d, t_f, Scalar(3) * d / (Scalar(2) * t_f)};
  }
};

template <class Scalar>
Trajectory<Scalar> direct_trap_trajectory(const DirectProtocol<Scalar>& p) {
  const Scalar d = p.d, t_f = p.t_f, v_m = p.v_m;
  const Scalar t1 = t_f / Scalar(3);  // = d / (2 v_m)
  const Scalar t2 = Scalar(2) * t_f / Scalar(3);
  auto eval = [=](Scalar t) -> TrajectoryPoint<Scalar> {
    if (t < t1) {
      const Scalar a = Scalar(2) * v_m * v_m / d;
      return {t, a * t * t / Scalar(2), a * t, a};
    }
    if (t < t2) return {t, v_m * t - d / Scalar(4), v_m, Scalar(0)};
    const Scalar a = v_m / (d / v_m - t_f);  // negative
    return {t, a / Scalar(2) * (t - t_f) * (t - t_f) + d, a * (t - t_f), a};
  };
  return Trajectory<Scalar>::from_function(t_f, eval, k_design_samples,
                                           {t1, t2});
}

/// Final offset of the condensate from the trap for the direct protocol,
///     q_c(t_f) - q0(t_f)   and   q_c'(t_f) - q0'(t_f),
/// in closed form with phi = omega0 t_f / 3. Vanishes exactly at the
/// resonant times t_f = 3 (2N+1) pi / omega0.
template <class Scalar>
std::pair<Scalar, Scalar> direct_final_excursion(Scalar d, Scalar t_f,
                                                 Scalar omega0) {
  if (!(t_f > Scalar(0)))
    throw DomainError("direct_final_excursion: t_f must be > 0");
  const Scalar phi = omega0 * t_f / Scalar(3);
  const Scalar s = std::sin(phi);
  const Scalar delta_q = Scalar(9) * d * (Scalar(1) - Scalar(2) * std::cos(phi)) *
                         s * s / (omega0 * omega0 * t_f * t_f);
  const Scalar delta_v =
      Scalar(9) * d / (Scalar(2) * omega0 * t_f * t_f) *
      (s + std::sin(Scalar(2) * phi) - std::sin(Scalar(3) * phi));
  return {delta_q, delta_v};
}

// ---------------------------------------------------------------------------
// Inverse-engineered polynomial protocol. The condensate path is fixed first
// as the unique quintic with rest boundary conditions (value, velocity and
// acceleration pinned at both ends); the trap path follows from the
// oscillator equation, q0 = q_c + q_c'' / omega0^2.
// ---------------------------------------------------------------------------

/// Basis quintic P(s) = 10 s^3 - 15 s^4 + 6 s^5 and derivatives in s.
template <class Scalar>
struct QuinticRamp {
  static Scalar p(Scalar s) { return ((6 * s - 15) * s + 10) * s * s * s; }
  static Scalar dp(Scalar s) { return ((30 * s - 60) * s + 30) * s * s; }
  static Scalar d2p(Scalar s) { return ((120 * s - 180) * s + 60) * s; }
  static Scalar d3p(Scalar s) { return (360 * s - 360) * s + 60; }
  static Scalar d4p(Scalar s) { return 720 * s - 360; }
};

template <class Scalar>
struct PolynomialProtocol {
  Scalar d{};
  Scalar t_f{};
  Scalar omega0{};
  /// Coefficients of q_c as a polynomial in s = t / t_f, constant term first.
  std::array<Scalar, 6> coefficients{};

  static PolynomialProtocol make(Scalar d, Scalar t_f, Scalar omega0) {
    if (!(t_f > Scalar(0)))
      throw DomainError("PolynomialProtocol: t_f must be > 0");
    PolynomialProtocol p;
    p.d = d;
    p.t_f = t_f;
    p.omega0 = omega0;
    p.coefficients = {Scalar(0), Scalar(0),      Scalar(0),
                      10 * d,    Scalar(-15) * d, Scalar(6) * d};
    return p;
  }

  TrajectoryPoint<Scalar> condensate_at(Scalar t) const {
    using Q = QuinticRamp<Scalar>;
    const Scalar s = t / t_f;
    return {t, d * Q::p(s), d / t_f * Q::dp(s), d / (t_f * t_f) * Q::d2p(s)};
  }

  TrajectoryPoint<Scalar> trap_at(Scalar t) const {
    using Q = QuinticRamp<Scalar>;
    const Scalar s = t / t_f;
    const Scalar w2 = omega0 * omega0;
    const Scalar tf2 = t_f * t_f;
    TrajectoryPoint<Scalar> p;
    p.t = t;
    p.q = d * (Q::p(s) + Q::d2p(s) / (w2 * tf2));
    p.q_dot = d / t_f * (Q::dp(s) + Q::d3p(s) / (w2 * tf2));
    p.q_ddot = d / tf2 * (Q::d2p(s) + Q::d4p(s) / (w2 * tf2));
    return p;
  }
};

/// Condensate and trap trajectories for the polynomial protocol.
template <class Scalar>
struct InverseDesign {
  PolynomialProtocol<Scalar> protocol;
  Trajectory<Scalar> condensate;
  Trajectory<Scalar> trap;
};

template <class Scalar>
InverseDesign<Scalar> polynomial_inverse(Scalar d, Scalar t_f, Scalar omega0) {
  auto proto = PolynomialProtocol<Scalar>::make(d, t_f, omega0);
  auto qc = Trajectory<Scalar>::from_function(
      t_f, [proto](Scalar t) { return proto.condensate_at(t); },
      k_design_samples);
  auto q0 = Trajectory<Scalar>::from_function(
      t_f, [proto](Scalar t) { return proto.trap_at(t); }, k_design_samples);
  return {proto, std::move(qc), std::move(q0)};
}

template <class Scalar>
struct IntervalCheck {
  Scalar min_q0{};
  Scalar max_q0{};
  bool stays_inside{};
};

/// Extrema of the polynomial trap path over [0, t_f] and whether it stays
/// within the transport interval [0, d]. For short t_f the trap overshoots;
/// the flag flips at omega0 t_f near 2.505.
template <class Scalar>
IntervalCheck<Scalar> polynomial_interval_check(Scalar d, Scalar t_f,
                                                Scalar omega0) {
  auto proto = PolynomialProtocol<Scalar>::make(d, t_f, omega0);
  using Q = QuinticRamp<Scalar>;
  const Scalar c2 = omega0 * omega0 * t_f * t_f;
  const auto val = [&](Scalar s) { return Q::p(s) + Q::d2p(s) / c2; };
  const auto slope = [&](Scalar s) { return Q::dp(s) + Q::d3p(s) / c2; };
  Scalar lo = std::min(val(Scalar(0)), val(Scalar(1)));
  Scalar hi = std::max(val(Scalar(0)), val(Scalar(1)));
  const Index n = 4096;
  Scalar s_prev = 0, g_prev = slope(Scalar(0));
  for (Index j = 1; j <= n; ++j) {
    const Scalar s = Scalar(j) / Scalar(n);
    const Scalar g = slope(s);
    if ((g_prev < 0) != (g < 0)) {
      // Stationary point bracketed; bisect it down to machine width.
      Scalar a = s_prev, b = s, ga = g_prev;
      for (int it = 0; it < 80; ++it) {
        const Scalar m = (a + b) / 2;
        const Scalar gm = slope(m);
        if ((ga < 0) == (gm < 0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      const Scalar v = val((a + b) / 2);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    s_prev = s;
    g_prev = g;
  }
  IntervalCheck<Scalar> out;
  out.min_q0 = lo * d;
  out.max_q0 = hi * d;
  const Scalar slack = Scalar(1e-12) * (std::abs(d) + Scalar(1));
  out.stays_inside = out.min_q0 >= -slack && out.max_q0 <= d + slack;
  (void)proto;
  return out;
}

// ---------------------------------------------------------------------------
// Anharmonic transport with a compensating force F = m q0''. The trap path
// itself is interpolated; the quintic end conditions (q0'' = 0 at both ends)
// are the default, with the cubic four-condition variant available.
// ---------------------------------------------------------------------------

template <class Scalar>
struct CompensatingProtocol {
  Scalar d{};
  Scalar t_f{};
  Scalar mass{};
  bool quintic{true};
  Trajectory<Scalar> trap;
  Scalar max_accel{};  // m/s^2

  Scalar force(Scalar t) const { return mass * trap.at_open(t).q_ddot; }
};

template <class Scalar>
CompensatingProtocol<Scalar> compensating_force(Scalar d, Scalar t_f,
                                                Scalar mass,
                                                bool quintic = true) {
  if (!(t_f > Scalar(0)))
    throw DomainError("compensating_force: t_f must be > 0");
  CompensatingProtocol<Scalar> proto;
  proto.d = d;
  proto.t_f = t_f;
  proto.mass = mass;
  proto.quintic = quintic;
  if (quintic) {
    proto.trap = Trajectory<Scalar>::from_function(
        t_f,
        [=](Scalar t) -> TrajectoryPoint<Scalar> {
          using Q = QuinticRamp<Scalar>;
          const Scalar s = t / t_f;
          return {t, d * Q::p(s), d / t_f * Q::dp(s),
                  d / (t_f * t_f) * Q::d2p(s)};
        },
        k_design_samples);
    // |P''| peaks at 10/sqrt(3) inside the ramp.
    proto.max_accel = Scalar(10) / std::sqrt(Scalar(3)) * std::abs(d) / (t_f * t_f);
  } else {
    proto.trap = Trajectory<Scalar>::from_function(
        t_f,
        [=](Scalar t) -> TrajectoryPoint<Scalar> {
          const Scalar s = t / t_f;
          return {t, d * (3 - 2 * s) * s * s, d / t_f * 6 * s * (1 - s),
                  d / (t_f * t_f) * (6 - 12 * s)};
        },
        k_design_samples);
    proto.max_accel = Scalar(6) * std::abs(d) / (t_f * t_f);
  }
  return proto;
}

}  // namespace bectrans
