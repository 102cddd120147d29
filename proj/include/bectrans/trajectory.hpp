#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bectrans/errors.hpp"
#include "bectrans/types.hpp"

namespace bectrans {

/// Default node count for tabulating designed protocols.
inline constexpr Index k_design_samples = 4096;

template <class Scalar>
struct TrajectoryPoint {
  Scalar t{};       // s
  Scalar q{};       // m
  Scalar q_dot{};   // m/s
  Scalar q_ddot{};  // m/s^2
};

/// Time-parametrized path on [0, t_f] with first and second derivatives.
///
/// Protocols built from closed forms keep their analytic evaluator and use it
/// everywhere; paths produced by numerical integration are evaluated with a
/// cubic Hermite rule on the stored samples. Either way, evaluation at a
/// sample time reproduces the sample exactly.
///
/// Piecewise protocols list their interior discontinuity times as
/// breakpoints. A protocol whose nominal endpoint values differ from the
/// open-interval branches (the bang-bang trap paths) carries endpoint
/// overrides: eval() returns them at t == 0 / t == t_f, eval_open() always
/// follows the branch formulas.
template <class Scalar>
class Trajectory {
 public:
  using Point = TrajectoryPoint<Scalar>;
  using Evaluator = std::function<Point(Scalar)>;

  Trajectory() = default;

  static Trajectory from_samples(std::vector<Point> samples,
                                 std::vector<Scalar> breakpoints = {}) {
    Trajectory tr;
    tr.init_samples(std::move(samples), std::move(breakpoints));
    return tr;
  }

  static Trajectory from_function(Scalar t_f, Evaluator f, Index n_intervals,
                                  std::vector<Scalar> breakpoints = {},
                                  std::optional<Point> start_override = {},
                                  std::optional<Point> end_override = {}) {
    if (!(t_f >= Scalar(0))) throw DomainError("Trajectory: t_f must be >= 0");
    Trajectory tr;
    tr.analytic_ = std::move(f);
    tr.start_override_ = start_override;
    tr.end_override_ = end_override;
    std::vector<Point> samples;
    if (t_f == Scalar(0)) {
      samples.push_back(start_override ? *start_override
                                       : tr.analytic_(Scalar(0)));
      samples.back().t = Scalar(0);
      tr.init_samples(std::move(samples), {});
      return tr;
    }
    // Uniform nodes merged with the breakpoints.
    std::vector<Scalar> ts;
    ts.reserve(static_cast<std::size_t>(n_intervals) + breakpoints.size() + 2);
    for (Index j = 0; j <= n_intervals; ++j)
      ts.push_back(t_f * Scalar(j) / Scalar(n_intervals));
    for (Scalar b : breakpoints)
      if (b > Scalar(0) && b < t_f) ts.push_back(b);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    samples.reserve(ts.size());
    for (Scalar t : ts) samples.push_back(tr.at(t));
    tr.init_samples(std::move(samples), std::move(breakpoints));
    return tr;
  }

  /// Constant path, useful as the lab-frame reference.
  static Trajectory constant(Scalar t_f, Scalar q) {
    return from_function(
        t_f, [q](Scalar t) { return Point{t, q, Scalar(0), Scalar(0)}; }, 8);
  }

  Scalar t_f() const { return samples_.empty() ? Scalar(0) : samples_.back().t; }
  const std::vector<Point>& samples() const { return samples_; }
  const std::vector<Scalar>& breakpoints() const { return breakpoints_; }
  bool has_closed_form() const { return static_cast<bool>(analytic_); }

  /// Value at t, honoring the distinguished endpoint values.
  Point at(Scalar t) const {
    if (start_override_ && t == samples_front_t()) return *start_override_;
    if (end_override_ && t == t_f()) return *end_override_;
    return at_open(t);
  }

  /// Value at t by the open-interval branch formulas (what the propagator
  /// and the quadratures use).
  Point at_open(Scalar t) const {
    if (analytic_) {
      Point p = analytic_(t);
      p.t = t;
      return p;
    }
    return hermite(t);
  }

  Point operator()(Scalar t) const { return at(t); }

 private:
  Scalar samples_front_t() const {
    return samples_.empty() ? Scalar(0) : samples_.front().t;
  }

  void init_samples(std::vector<Point> samples, std::vector<Scalar> breakpoints) {
    if (samples.empty()) throw DomainError("Trajectory: no samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
      if (!(samples[i].t > samples[i - 1].t))
        throw DomainError("Trajectory: sample times must strictly increase");
    if (samples.front().t != Scalar(0))
      throw DomainError("Trajectory: samples must start at t = 0");
    samples_ = std::move(samples);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints_ = std::move(breakpoints);
  }

  Point hermite(Scalar t) const {
    const auto& s = samples_;
    if (s.size() == 1) return s.front();
    if (t <= s.front().t) return clamp_eval(s.front(), t);
    if (t >= s.back().t) return clamp_eval(s.back(), t);
    // Locate the interval [t_i, t_{i+1}) containing t.
    auto it = std::upper_bound(
        s.begin(), s.end(), t,
        [](Scalar value, const Point& p) { return value < p.t; });
    const Point& b = *it;
    const Point& a = *(it - 1);
    if (t == a.t) return a;
    const Scalar h = b.t - a.t;
    const Scalar u = (t - a.t) / h;
    const Scalar u2 = u * u, u3 = u2 * u;
    const Scalar h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const Scalar h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    Point p;
    p.t = t;
    p.q = h00 * a.q + h10 * h * a.q_dot + h01 * b.q + h11 * h * b.q_dot;
    p.q_dot = h00 * a.q_dot + h10 * h * a.q_ddot + h01 * b.q_dot +
              h11 * h * b.q_ddot;
    p.q_ddot = (1 - u) * a.q_ddot + u * b.q_ddot;
    return p;
  }

  static Point clamp_eval(Point p, Scalar t) {
    p.t = t;
    return p;
  }

  std::vector<Point> samples_;
  std::vector<Scalar> breakpoints_;
  Evaluator analytic_;
  std::optional<Point> start_override_;
  std::optional<Point> end_override_;
};

/// Interior breakpoints of both paths merged, for segment-aligned stepping.
template <class Scalar>
std::vector<Scalar> merged_breakpoints(const Trajectory<Scalar>& a,
                                       const Trajectory<Scalar>& b) {
  std::vector<Scalar> bp = a.breakpoints();
  bp.insert(bp.end(), b.breakpoints().begin(), b.breakpoints().end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

}  // namespace bectrans
