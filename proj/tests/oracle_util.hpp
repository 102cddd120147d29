#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they are used to check.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

/// Forward integration of y'' = -w0^2 (y - drive(t)) from rest with plain
/// fixed-step RK4. Written against std::function on purpose: this is the
/// brute-force reference for the library's classical_response and the
/// closed-form excursion formulas.
inline std::pair<double, double> driven_oscillator_endpoint(
    const std::function<double(double)>& drive, double w0, double t_end,
    int n_steps) {
  double y = 0, v = 0, t = 0;
  const double h = t_end / n_steps;
  const auto acc = [&](double tt, double yy) {
    return -w0 * w0 * (yy - drive(tt));
  };
  for (int i = 0; i < n_steps; ++i) {
    const double k1y = v, k1v = acc(t, y);
    const double k2y = v + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, y + 0.5 * h * k1y);
    const double k3y = v + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, y + 0.5 * h * k2y);
    const double k4y = v + h * k3v, k4v = acc(t + h, y + h * k3y);
    y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
    v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t += h;
  }
  return {y, v};
}

/// Trapezoid velocity profile of the direct protocol, as plain branch
/// formulas (duplicated here on purpose).
inline double trapezoid_trap(double d, double t_f, double t) {
  const double v_m = 1.5 * d / t_f;
  if (t < d / (2 * v_m)) return v_m * v_m * t * t / d;
  if (t < d / v_m) return v_m * t - d / 4;
  return v_m / (2 * (d / v_m - t_f)) * (t - t_f) * (t - t_f) + d;
}

/// Overlap of two real Gaussians of common width sigma displaced by delta,
/// with a relative momentum kick k: |<chi | e^{ikx} chi(. - delta)>|.
inline double gaussian_overlap(double sigma, double delta, double k) {
  return std::exp(-delta * delta / (4 * sigma * sigma) -
                  k * k * sigma * sigma / 4);
}

/// Simpson quadrature on a callable.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, int n) {
  double acc = 0;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    const double x0 = a + i * h;
    acc += h / 6 * (f(x0) + 4 * f(x0 + h / 2) + f(x0 + h));
  }
  return acc;
}

}  // namespace oracle
