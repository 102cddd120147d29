#pragma once

#include <cmath>
#include <string>

#include "bectrans/classical.hpp"
#include "bectrans/trajectory.hpp"

namespace bectrans {

// Minimum-time trap trajectories under saturated ("bang-bang") controls.
// Both constraint families have closed-form switching and final times; the
// trap paths carry genuine jumps, so the nominal endpoint values q0(0) = 0
// and q0(t_f) = d are stored as distinguished boundary values while the
// open-interval branches drive the dynamics.

template <class Scalar>
struct DisplacementBoundedSolution {
  Scalar d{};       // m
  Scalar delta{};   // m, bound on |q_c - q0|
  Scalar omega0{};  // rad/s
  Scalar t_1{};     // s, switch (= t_f / 2)
  Scalar t_f{};     // s, minimal final time
  Trajectory<Scalar> trap;        // q0
  Trajectory<Scalar> condensate;  // q_c, piecewise parabola, C^1

  /// Control u(t) = q_c - q0; zero at the exact endpoints.
  Scalar control(Scalar t) const {
    if (t == Scalar(0) || t == t_f) return Scalar(0);
    return t < t_1 ? -delta : delta;
  }
};

/// Fastest transport with the condensate never lagging or leading the trap
/// by more than delta: t_f = 2 sqrt(d/delta) / omega0, switch at t_f/2.
template <class Scalar>
DisplacementBoundedSolution<Scalar> solve_displacement_bounded(Scalar d,
                                                               Scalar delta,
                                                               Scalar omega0) {
  if (!(delta > Scalar(0)))
    throw DomainError("solve_displacement_bounded: invalid constraint delta <= 0");
  if (d < Scalar(0))
    throw DomainError("solve_displacement_bounded: d must be >= 0");
  DisplacementBoundedSolution<Scalar> sol;
  sol.d = d;
  sol.delta = delta;
  sol.omega0 = omega0;
  sol.t_f = Scalar(2) * std::sqrt(d / delta) / omega0;
  sol.t_1 = sol.t_f / Scalar(2);
  const Scalar w2 = omega0 * omega0;
  const Scalar t_1 = sol.t_1, t_f = sol.t_f;
  using P = TrajectoryPoint<Scalar>;
  auto trap = [=](Scalar t) -> P {
    if (t < t_1)
      return {t, (Scalar(1) + w2 * t * t / 2) * delta, w2 * t * delta,
              w2 * delta};
    const Scalar u = t - t_f;
    return {t, d - (w2 * u * u / 2 + Scalar(1)) * delta, -w2 * u * delta,
            -w2 * delta};
  };
  auto cond = [=](Scalar t) -> P {
    if (t < t_1)
      return {t, w2 * t * t / 2 * delta, w2 * t * delta, w2 * delta};
    const Scalar u = t - t_f;
    return {t, d - w2 * u * u / 2 * delta, -w2 * u * delta, -w2 * delta};
  };
  if (d == Scalar(0)) {
    sol.trap = Trajectory<Scalar>::from_function(Scalar(0), trap, 1, {},
                                                 P{0, 0, 0, 0});
    sol.condensate = Trajectory<Scalar>::from_function(Scalar(0), cond, 1, {},
                                                       P{0, 0, 0, 0});
    return sol;
  }
  sol.trap = Trajectory<Scalar>::from_function(
      t_f, trap, k_design_samples, {t_1}, P{0, 0, 0, 0}, P{t_f, d, 0, 0});
  sol.condensate =
      Trajectory<Scalar>::from_function(t_f, cond, k_design_samples, {t_1});
  return sol;
}

template <class Scalar>
struct RangeBoundedSolution {
  Scalar d{};
  Scalar q_lo{};    // lower admissible trap position
  Scalar q_hi{};    // upper admissible trap position
  Scalar omega0{};
  Scalar t_1{};
  Scalar t_f{};
  Trajectory<Scalar> trap;        // q_hi then q_lo, endpoint jumps to 0 and d
  Trajectory<Scalar> condensate;  // piecewise oscillator arcs
};

/// Fastest transport with the trap center confined to [q_lo, q_hi]. The trap
/// sits at q_hi to accelerate, then at q_lo to brake; switching and final
/// times follow from continuity of the oscillator arcs.
template <class Scalar>
RangeBoundedSolution<Scalar> solve_range_bounded(Scalar d, Scalar q_lo,
                                                 Scalar q_hi, Scalar omega0) {
  if (!(q_lo < q_hi))
    throw InfeasibilityError(
        "solve_range_bounded: empty range cannot transport from rest",
        "q_lo < q_hi");
  if (!(q_hi > Scalar(0)))
    throw InfeasibilityError(
        "solve_range_bounded: trap cannot pull forward from rest", "q_hi > 0");
  if (!(d - q_lo > Scalar(0)))
    throw InfeasibilityError(
        "solve_range_bounded: trap cannot brake the arrival", "q_lo < d");
  const Scalar width = q_lo - q_hi;  // negative
  const Scalar a1 = Scalar(1) - (q_lo * d - d * d / 2) / (q_hi * width);
  if (!(a1 >= Scalar(-1) && a1 <= Scalar(1)))
    throw InfeasibilityError(
        "solve_range_bounded: no feasible switch time",
        "arccos argument (switch time) in [-1, 1]");
  const Scalar a2 =
      (q_lo * d - d * d / 2 - q_lo * width) / ((d - q_lo) * width);
  if (!(a2 >= Scalar(-1) && a2 <= Scalar(1)))
    throw InfeasibilityError(
        "solve_range_bounded: no feasible arrival time",
        "arccos argument (final time) in [-1, 1]");
  RangeBoundedSolution<Scalar> sol;
  sol.d = d;
  sol.q_lo = q_lo;
  sol.q_hi = q_hi;
  sol.omega0 = omega0;
  sol.t_1 = std::acos(a1) / omega0;
  sol.t_f = sol.t_1 + std::acos(a2) / omega0;
  const Scalar t_1 = sol.t_1, t_f = sol.t_f;
  using P = TrajectoryPoint<Scalar>;
  sol.trap = Trajectory<Scalar>::from_function(
      t_f,
      [=](Scalar t) -> P {
        return {t, t < t_1 ? q_hi : q_lo, Scalar(0), Scalar(0)};
      },
      k_design_samples, {t_1}, P{0, 0, 0, 0}, P{t_f, d, 0, 0});
  // First arc swings about q_hi from rest; the second arc about q_lo picks
  // up the switch point with matched value and velocity.
  const Scalar qs = q_hi * (Scalar(1) - std::cos(omega0 * t_1));
  const Scalar vs = q_hi * omega0 * std::sin(omega0 * t_1);
  sol.condensate = Trajectory<Scalar>::from_function(
      t_f,
      [=](Scalar t) -> P {
        const Scalar w2 = omega0 * omega0;
        if (t < t_1) {
          const Scalar c = std::cos(omega0 * t), s = std::sin(omega0 * t);
          return {t, q_hi * (1 - c), q_hi * omega0 * s, w2 * q_hi * c};
        }
        const Scalar ph = omega0 * (t - t_1);
        const Scalar c = std::cos(ph), s = std::sin(ph);
        const Scalar amp_c = qs - q_lo, amp_s = vs / omega0;
        const Scalar q = q_lo + amp_c * c + amp_s * s;
        return {t, q, omega0 * (-amp_c * s + amp_s * c), w2 * (q_lo - q)};
      },
      k_design_samples, {t_1});
  return sol;
}

/// Residuals of the transport boundary conditions {x1(0), x2(0), x1(t_f),
/// x2(t_f)} against {0, 0, d, 0} when the state equations are forward
/// integrated with the given trap path. Positions in m, velocities in m/s.
template <class Scalar>
struct BoundaryReport {
  Scalar x1_start{};
  Scalar x2_start{};
  Scalar x1_end{};
  Scalar x2_end{};

  Scalar worst_position() const {
    return std::max(std::abs(x1_start), std::abs(x1_end));
  }
  Scalar worst_velocity() const {
    return std::max(std::abs(x2_start), std::abs(x2_end));
  }
};

template <class Scalar>
BoundaryReport<Scalar> verify_boundary(const Trajectory<Scalar>& trap,
                                       Scalar d, Scalar omega0,
                                       Index n_intervals = 4096) {
  BoundaryReport<Scalar> rep;
  if (trap.t_f() == Scalar(0)) {
    rep.x1_end = -d;
    return rep;
  }
  auto qc = classical_response(trap, omega0, n_intervals);
  const auto end = qc.samples().back();
  rep.x1_end = end.q - d;
  rep.x2_end = end.q_dot;
  return rep;
}

}  // namespace bectrans
