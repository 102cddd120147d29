#pragma once

#include <cmath>
#include <vector>

#include "bectrans/errors.hpp"
#include "bectrans/types.hpp"

namespace bectrans {

/// Node times on [0, t_f] that hit every breakpoint exactly, with roughly
/// n_intervals uniform steps overall distributed proportionally over the
/// smooth segments. Piecewise protocols lose no integration order this way.
template <class Scalar>
std::vector<Scalar> segment_nodes(Scalar t_f, Index n_intervals,
                                  const std::vector<Scalar>& breakpoints) {
  if (!(t_f > Scalar(0))) throw DomainError("segment_nodes: t_f must be > 0");
  std::vector<Scalar> edges{Scalar(0)};
  for (Scalar b : breakpoints)
    if (b > Scalar(0) && b < t_f) edges.push_back(b);
  edges.push_back(t_f);
  std::vector<Scalar> nodes{Scalar(0)};
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const Scalar a = edges[s], b = edges[s + 1];
    const auto m = std::max<Index>(
        1, static_cast<Index>(std::ceil((b - a) / t_f * Scalar(n_intervals))));
    for (Index j = 1; j <= m; ++j)
      nodes.push_back(a + (b - a) * Scalar(j) / Scalar(m));
    nodes.back() = b;
  }
  return nodes;
}

/// Cumulative integral of f on the given nodes, fourth order: each interval
/// contributes the Simpson value h/6 (f_a + 4 f_mid + f_b). Endpoint
/// evaluations are nudged into the interval so piecewise integrands always
/// see their own branch (nodes are assumed to include every breakpoint).
template <class Scalar, class F>
std::vector<Scalar> cumulative_integral(const std::vector<Scalar>& nodes,
                                        F&& f) {
  std::vector<Scalar> acc(nodes.size(), Scalar(0));
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Scalar a = nodes[i], b = nodes[i + 1];
    const Scalar nudge = (b - a) * Scalar(1e-9);
    const Scalar fa = f(a + nudge);
    const Scalar fm = f((a + b) / Scalar(2));
    const Scalar fb = f(b - nudge);
    acc[i + 1] = acc[i] + (b - a) / Scalar(6) * (fa + Scalar(4) * fm + fb);
  }
  return acc;
}

/// One classic RK4 step for y' = rhs(t, y) on a 2-state system.
template <class Scalar, class Rhs>
void rk4_step(Scalar t, Scalar h, Scalar& y0, Scalar& y1, Rhs&& rhs) {
  using V = std::pair<Scalar, Scalar>;
  const auto eval = [&](Scalar tt, Scalar a, Scalar b) { return rhs(tt, a, b); };
  const V k1 = eval(t, y0, y1);
  const V k2 = eval(t + h / 2, y0 + h / 2 * k1.first, y1 + h / 2 * k1.second);
  const V k3 = eval(t + h / 2, y0 + h / 2 * k2.first, y1 + h / 2 * k2.second);
  const V k4 = eval(t + h, y0 + h * k3.first, y1 + h * k3.second);
  y0 += h / 6 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first);
  y1 += h / 6 * (k1.second + 2 * k2.second + 2 * k3.second + k4.second);
}

}  // namespace bectrans
