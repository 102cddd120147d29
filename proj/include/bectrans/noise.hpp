#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

#include "bectrans/errors.hpp"
#include "bectrans/groundstate.hpp"
#include "bectrans/metrics.hpp"
#include "bectrans/noise_types.hpp"
#include "bectrans/propagator.hpp"
#include "bectrans/rng.hpp"
#include "bectrans/spectral.hpp"
#include "bectrans/trap_config.hpp"

namespace bectrans {

// White Gaussian jitter of the trap center, q0 -> q0 + lambda zeta(t), with
// zeta unit-intensity white noise in scaled time tau = omega0 t. The scaled
// reading is the only dimensionally consistent one for the response
// integrals below, so lambda carries the length unit.

template <class Scalar>
NoiseRealization<Scalar> sample_noise(std::uint64_t seed, Scalar t_F,
                                      Scalar omega0, Scalar dt_scaled) {
  if (!(dt_scaled > Scalar(0)))
    throw DomainError("sample_noise: dt_scaled must be > 0");
  const Scalar theta = omega0 * t_F;
  const auto n = std::max<Index>(
      1, static_cast<Index>(std::ceil(theta / dt_scaled - Scalar(1e-9))));
  NoiseRealization<Scalar> nz;
  nz.seed = seed;
  nz.dt_scaled = dt_scaled;
  nz.samples.resize(n);
  GaussianStream gs(seed);
  const Scalar scale = Scalar(1) / std::sqrt(dt_scaled);
  for (Index k = 0; k < n; ++k) nz.samples[k] = Scalar(gs.next()) * scale;
  return nz;
}

/// Response integrals of the sampled path against sin/cos of (Theta - tau).
/// Each cell is integrated exactly, so the pair is the exact linear response
/// to the piecewise-constant realization.
template <class Scalar>
BetaPair<Scalar> beta_integrals(const NoiseRealization<Scalar>& zeta,
                                Scalar omega0, Scalar t_F) {
  const Scalar theta = omega0 * t_F;
  if (zeta.duration() < theta - Scalar(1e-9) * std::max(theta, Scalar(1)))
    throw CoverageError("beta_integrals: realization shorter than t_F");
  BetaPair<Scalar> out;
  out.t_F = t_F;
  Scalar beta = 0, beta_dot = 0;
  for (Index k = 0; k < zeta.samples.size(); ++k) {
    const Scalar a = Scalar(k) * zeta.dt_scaled;
    if (a >= theta) break;
    const Scalar b = std::min(a + zeta.dt_scaled, theta);
    beta += zeta.samples[k] * (std::cos(theta - b) - std::cos(theta - a));
    beta_dot += zeta.samples[k] * (std::sin(theta - a) - std::sin(theta - b));
  }
  out.beta = beta;
  out.beta_dot_scaled = beta_dot;
  return out;
}

/// Shifted-overlap fidelity of the jittered transport mode against the clean
/// ground state,
///   F = | int dq exp(i m lambda beta' q / hbar) chi*(q + lambda beta) chi(q) |,
/// independent of the nominal path and distance by construction.
template <class Scalar>
Scalar semianalytic_fidelity(const StationaryState<Scalar>& ground,
                             const BetaPair<Scalar>& pair, Scalar lambda,
                             const TrapConfig<Scalar>& cfg,
                             SpectralWorkspace<Scalar>& ws) {
  if (!(lambda >= Scalar(0)))
    throw DomainError("semianalytic_fidelity: lambda must be >= 0");
  const Scalar lam = lambda / cfg.oscillator_length;
  const Scalar shift = lam * pair.beta;
  const auto& grid = ground.chi.grid;
  const Scalar span = grid.x_max() - grid.x_min();
  if (std::abs(shift) > span / Scalar(4))
    throw CoverageError(
        "semianalytic_fidelity: displacement exceeds the grid margin");
  // chi(q + lambda beta) = chi translated by -shift.
  Wavefunction<Scalar> moved = translated(ground.chi, -shift, ws);
  const Scalar kick = lam * pair.beta_dot_scaled;
  moved.amp = moved.amp.conjugate() * ground.chi.amp *
              unit_phase<Scalar>(kick * grid.points());
  const std::complex<Scalar> f = moved.amp.sum() * grid.dx();
  return std::min(std::abs(f), Scalar(1));
}

template <class Scalar>
Scalar semianalytic_fidelity(const StationaryState<Scalar>& ground,
                             const BetaPair<Scalar>& pair, Scalar lambda,
                             const TrapConfig<Scalar>& cfg) {
  SpectralWorkspace<Scalar> ws(ground.chi.grid);
  return semianalytic_fidelity(ground, pair, lambda, cfg, ws);
}

template <class Scalar>
struct AverageFidelityOptions {
  Scalar dt_scaled = Scalar(1e-3);
  unsigned n_workers = 0;  // 0 -> hardware concurrency
};

/// Monte Carlo mean of F_zeta over independent realizations. Per-realization
/// seeds are derived from the master seed by counter, partial results are
/// stored by index and reduced in index order, so the outcome is
/// bit-identical for any worker count.
template <class Scalar>
FidelityRecord<Scalar> average_fidelity(const TrapConfig<Scalar>& cfg,
                                        const StationaryState<Scalar>& ground,
                                        Scalar t_f, Scalar lambda, Index n,
                                        std::uint64_t master_seed,
                                        const AverageFidelityOptions<Scalar>& opt = {}) {
  if (n < 1) throw DomainError("average_fidelity: need n >= 1");
  std::vector<Scalar> fids(static_cast<std::size_t>(n));
  const auto run_range = [&](Index begin, Index end) {
    SpectralWorkspace<Scalar> ws(ground.chi.grid);
    for (Index i = begin; i < end; ++i) {
      const auto zeta = sample_noise(derive_seed(master_seed, i), t_f,
                                     cfg.omega0, opt.dt_scaled);
      const auto pair = beta_integrals(zeta, cfg.omega0, t_f);
      fids[static_cast<std::size_t>(i)] =
          semianalytic_fidelity(ground, pair, lambda, cfg, ws);
    }
  };
  unsigned workers = opt.n_workers ? opt.n_workers
                                   : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
  if (workers <= 1) {
    run_range(0, n);
  } else {
    std::vector<std::future<void>> futs;
    const Index chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const Index b = std::min<Index>(n, Index(w) * chunk);
      const Index e = std::min<Index>(n, b + chunk);
      if (b < e)
        futs.push_back(std::async(std::launch::async, run_range, b, e));
    }
    for (auto& f : futs) f.get();
  }
  Scalar mean = 0;
  for (Scalar f : fids) mean += f;
  mean /= Scalar(n);
  Scalar var = 0;
  for (Scalar f : fids) var += (f - mean) * (f - mean);
  FidelityRecord<Scalar> rec;
  rec.lambda = lambda;
  rec.g1 = cfg.g1;
  rec.t_f = t_f;
  rec.n_realizations = n;
  rec.mean_fidelity = mean;
  rec.std_error = n > 1 ? std::sqrt(var / (Scalar(n) * Scalar(n - 1))) : Scalar(0);
  rec.seed = master_seed;
  return rec;
}

/// Semi-analytic vs full-propagation fidelity for one fixed realization: the
/// propagator runs with the trap center shifted by lambda zeta per step and
/// its final overlap with the clean target is compared against F_zeta.
template <class Scalar>
std::pair<Scalar, Scalar> noisy_propagation_crosscheck(
    const TrapConfig<Scalar>& cfg, const Trajectory<Scalar>& trap,
    const Trajectory<Scalar>& frame, const StationaryState<Scalar>& ground,
    const NoiseRealization<Scalar>& zeta, Scalar lambda, Scalar dt) {
  SpectralWorkspace<Scalar> ws(ground.chi.grid);
  const auto pair = beta_integrals(zeta, cfg.omega0, trap.t_f());
  const Scalar f_semi = semianalytic_fidelity(ground, pair, lambda, cfg, ws);
  PropagationOptions<Scalar> opt;
  opt.dt = dt;
  opt.noise = &zeta;
  opt.noise_lambda = lambda;
  opt.record_snapshots = false;
  const auto res = propagate(cfg, trap, frame, ground.chi, ground.chi, opt);
  return {f_semi, res.final_fidelity};
}

}  // namespace bectrans
