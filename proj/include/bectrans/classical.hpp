#pragma once

#include <cmath>
#include <vector>

#include "bectrans/quadrature.hpp"
#include "bectrans/trajectory.hpp"

namespace bectrans {

/// Classical path of the condensate center in a moving harmonic trap,
///     q_c'' + omega0^2 (q_c - q0(t)) = 0,   q_c(0) = q_c'(0) = 0,
/// integrated with fixed-step RK4 aligned to the protocol's breakpoints.
template <class Scalar>
Trajectory<Scalar> classical_response(const Trajectory<Scalar>& q0,
                                      Scalar omega0,
                                      Index n_intervals = 4096) {
  if (!(q0.t_f() > Scalar(0)))
    throw DomainError("classical_response: invalid protocol, t_f <= 0");
  const Scalar w2 = omega0 * omega0;
  const auto nodes = segment_nodes(q0.t_f(), n_intervals, q0.breakpoints());
  std::vector<TrajectoryPoint<Scalar>> pts;
  pts.reserve(nodes.size());
  Scalar y = 0, v = 0;
  pts.push_back({Scalar(0), y, v, w2 * (q0.at_open(Scalar(0)).q - y)});
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Scalar a = nodes[i], b = nodes[i + 1];
    // Forcing evaluations are pinched into the step so the RK4 stages never
    // read across a protocol breakpoint.
    const Scalar nudge = (b - a) * Scalar(1e-9);
    const auto rhs = [&](Scalar t, Scalar y_, Scalar v_) {
      const Scalar tt = std::min(std::max(t, a + nudge), b - nudge);
      return std::pair<Scalar, Scalar>{v_, w2 * (q0.at_open(tt).q - y_)};
    };
    rk4_step(a, b - a, y, v, rhs);
    pts.push_back({b, y, v, w2 * (q0.at_open(b).q - y)});
  }
  return Trajectory<Scalar>::from_samples(std::move(pts), q0.breakpoints());
}

/// Same path by the convolution form
///     q_c(t) = omega0 * int_0^t q0(t') sin(omega0 (t - t')) dt',
/// reduced to two cumulative quadratures via the angle-addition identity.
/// Kept as an independent cross-check of the ODE route.
template <class Scalar>
Trajectory<Scalar> classical_response_convolution(const Trajectory<Scalar>& q0,
                                                  Scalar omega0,
                                                  Index n_intervals = 4096) {
  if (!(q0.t_f() > Scalar(0)))
    throw DomainError("classical_response_convolution: invalid protocol, t_f <= 0");
  const auto nodes = segment_nodes(q0.t_f(), n_intervals, q0.breakpoints());
  const auto c_int = cumulative_integral(nodes, [&](Scalar t) {
    return q0.at_open(t).q * std::cos(omega0 * t);
  });
  const auto s_int = cumulative_integral(nodes, [&](Scalar t) {
    return q0.at_open(t).q * std::sin(omega0 * t);
  });
  std::vector<TrajectoryPoint<Scalar>> pts;
  pts.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Scalar t = nodes[i];
    const Scalar sn = std::sin(omega0 * t), cs = std::cos(omega0 * t);
    TrajectoryPoint<Scalar> p;
    p.t = t;
    p.q = omega0 * (sn * c_int[i] - cs * s_int[i]);
    p.q_dot = omega0 * omega0 * (cs * c_int[i] + sn * s_int[i]);
    p.q_ddot = omega0 * omega0 * (q0.at_open(t).q - p.q);
    pts.push_back(p);
  }
  return Trajectory<Scalar>::from_samples(std::move(pts), q0.breakpoints());
}

/// Max |q_c'' + omega0^2 (q_c - q0)| over the sample grid of q_c.
template <class Scalar>
Scalar oscillator_residual(const Trajectory<Scalar>& q_c,
                           const Trajectory<Scalar>& q0, Scalar omega0) {
  Scalar worst = 0;
  for (const auto& p : q_c.samples()) {
    const Scalar r =
        p.q_ddot + omega0 * omega0 * (p.q - q0.at_open(p.t).q);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace bectrans
