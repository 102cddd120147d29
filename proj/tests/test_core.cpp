#include <doctest.h>

#include <cmath>
#include <complex>

#include "bectrans/constants.hpp"
#include "bectrans/grid.hpp"
#include "bectrans/trajectory.hpp"
#include "bectrans/trap_config.hpp"
#include "bectrans/wavefunction.hpp"

using namespace bectrans;

namespace {
TrapConfig<double> paper_config(double g_over_hbar = 0.05) {
  return TrapConfig<double>::from_si(k_mass_rb87, 2 * M_PI * 50.0, g_over_hbar,
                                     1.6e-3);
}
}  // namespace

TEST_CASE("oscillator units") {
  const auto cfg = paper_config();

  SUBCASE("derived length for 87Rb at 2 pi 50 Hz") {
    // Independent arithmetic route.
    const double direct = std::sqrt(k_hbar / (k_mass_rb87 * 2 * M_PI * 50.0));
    CHECK(cfg.oscillator_length == doctest::Approx(direct).epsilon(1e-14));
    // Frozen reference value.
    CHECK(cfg.oscillator_length ==
          doctest::Approx(1.525126306795235e-6).epsilon(1e-12));
  }

  SUBCASE("unit definitions map to one") {
    CHECK(to_dimensionless(cfg, cfg.oscillator_length, Unit::length) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(to_dimensionless(cfg, 1.0 / cfg.omega0, Unit::time) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("round trip is identity within 1e-12") {
    for (Unit u : {Unit::length, Unit::time, Unit::angular_frequency,
                   Unit::energy, Unit::velocity, Unit::acceleration,
                   Unit::coupling}) {
      const double v = 3.7425e-4;
      CHECK(from_dimensionless(cfg, to_dimensionless(cfg, v, u), u) ==
            doctest::Approx(v).epsilon(1e-12));
    }
  }

  SUBCASE("unknown unit tag is rejected") {
    CHECK_THROWS_AS((void)unit_from_name("furlongs"), ConfigError);
    CHECK(unit_from_name("velocity") == Unit::velocity);
  }

  SUBCASE("coupling convention: g1 given as g1/hbar in m/s") {
    CHECK(cfg.g1 == doctest::Approx(0.05 * k_hbar).epsilon(1e-15));
    CHECK(cfg.coupling_dimensionless() ==
          doctest::Approx(0.05 / (cfg.oscillator_length * cfg.omega0))
              .epsilon(1e-13));
  }

  SUBCASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(TrapConfig<double>::from_si(-1, 1, 0, 0), DomainError);
    CHECK_THROWS_AS(TrapConfig<double>::from_si(1, 0, 0, 0), DomainError);
    CHECK_THROWS_AS(TrapConfig<double>::from_si(1, 1, -0.1, 0), DomainError);
    CHECK_THROWS_AS(TrapConfig<double>::from_si(1, 1, 0, -1), DomainError);
  }
}

TEST_CASE("grid") {
  SUBCASE("stored spacing relation is exact") {
    Grid1D<double> g(-12.7, 31.9, 512);
    CHECK(g.dx() * 512 == g.x_max() - g.x_min());
    CHECK(g.x(0) == -12.7);
  }
  SUBCASE("power-of-two point count enforced") {
    CHECK_THROWS_AS(Grid1D<double>(0.0, 1.0, 100), DomainError);
    CHECK_THROWS_AS(Grid1D<double>(0.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(Grid1D<double>(1.0, 0.0, 64), DomainError);
    CHECK_NOTHROW(Grid1D<double>(0.0, 1.0, 2));
  }
  SUBCASE("wavenumbers follow FFT ordering") {
    Grid1D<double> g(-4.0, 4.0, 8);
    const auto k = g.wavenumbers();
    const double dk = 2 * M_PI / 8.0;
    CHECK(k[0] == 0.0);
    CHECK(k[1] == doctest::Approx(dk));
    CHECK(k[4] == doctest::Approx(-4 * dk));
    CHECK(k[7] == doctest::Approx(-dk));
  }
}

TEST_CASE("wavefunction normalization") {
  Grid1D<double> g(-8.0, 8.0, 128);

  SUBCASE("constant amplitudes go to 1/sqrt(N dx)") {
    Wavefunction<double> psi(g, ArrayXc<double>::Constant(128, {2.5, 0.0}));
    const auto n = normalized(psi);
    const double expect = 1.0 / std::sqrt(128 * g.dx());
    for (Index j = 0; j < 128; ++j)
      CHECK(n.amp[j].real() == doctest::Approx(expect).epsilon(1e-14));
    CHECK(norm_squared(n) == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("already normalized Gaussian is unchanged, normalize idempotent") {
    ArrayXc<double> a(128);
    for (Index j = 0; j < 128; ++j)
      a[j] = std::pow(M_PI, -0.25) * std::exp(-g.x(j) * g.x(j) / 2);
    auto psi = normalized(Wavefunction<double>(g, a));
    auto again = normalized(psi);
    for (Index j = 0; j < 128; ++j) CHECK(again.amp[j] == psi.amp[j]);
    // A hand-normalized Gaussian stays put within 1e-12.
    for (Index j = 0; j < 128; ++j)
      CHECK(std::abs(psi.amp[j] - a[j]) <= 1e-12 * std::abs(a[j]) + 1e-18);
  }

  SUBCASE("norm is phase blind") {
    ArrayXc<double> a(128);
    for (Index j = 0; j < 128; ++j)
      a[j] = std::exp(-g.x(j) * g.x(j) / 3) * 0.123;
    const auto plain = normalized(Wavefunction<double>(g, a));
    const auto rotated =
        normalized(Wavefunction<double>(g, a * std::complex<double>(0.0, 7.0)));
    for (Index j = 0; j < 128; ++j)
      CHECK(std::abs(rotated.amp[j]) ==
            doctest::Approx(std::abs(plain.amp[j])).epsilon(1e-13));
  }

  SUBCASE("all-zero input is degenerate") {
    CHECK_THROWS_AS((void)normalized(Wavefunction<double>::zero(g)), DomainError);
  }
}

TEST_CASE("trajectory evaluation") {
  SUBCASE("sampled path reproduces samples exactly and interpolates smoothly") {
    // Tabulate a sine and check the Hermite rule between nodes.
    std::vector<TrajectoryPoint<double>> pts;
    const int n = 64;
    const double t_f = 2.0;
    for (int i = 0; i <= n; ++i) {
      const double t = t_f * i / n;
      pts.push_back({t, std::sin(t), std::cos(t), -std::sin(t)});
    }
    auto tr = Trajectory<double>::from_samples(pts);
    CHECK(tr.t_f() == t_f);
    for (int i = 0; i <= n; ++i) {
      const double t = t_f * i / n;
      CHECK(tr.at(t).q == pts[i].q);
      CHECK(tr.at(t).q_dot == pts[i].q_dot);
      CHECK(tr.at(t).q_ddot == pts[i].q_ddot);
    }
    const double h = t_f / n;
    for (double t : {0.013, 0.7771, 1.5009, 1.9731}) {
      CHECK(tr.at(t).q == doctest::Approx(std::sin(t)).epsilon(1e-7));
      CHECK(tr.at(t).q_dot == doctest::Approx(std::cos(t)).epsilon(1e-7));
      CHECK(std::abs(tr.at(t).q_ddot - -std::sin(t)) < h);
    }
  }

  SUBCASE("sample times must strictly increase from zero") {
    std::vector<TrajectoryPoint<double>> bad{{0, 0, 0, 0}, {0, 1, 0, 0}};
    CHECK_THROWS_AS((void)Trajectory<double>::from_samples(bad), DomainError);
    std::vector<TrajectoryPoint<double>> off{{0.5, 0, 0, 0}, {1, 1, 0, 0}};
    CHECK_THROWS_AS((void)Trajectory<double>::from_samples(off), DomainError);
  }

  SUBCASE("closed-form path keeps its evaluator and endpoint overrides") {
    using P = TrajectoryPoint<double>;
    auto tr = Trajectory<double>::from_function(
        1.0, [](double t) { return P{t, 2 + t * t, 2 * t, 2.0}; }, 16, {0.5},
        P{0, 0, 0, 0}, P{1.0, 9.0, 0, 0});
    CHECK(tr.has_closed_form());
    CHECK(tr.at(0.0).q == 0.0);        // distinguished boundary value
    CHECK(tr.at_open(0.0).q == 2.0);   // branch value
    CHECK(tr.at(1.0).q == 9.0);
    CHECK(tr.at_open(1.0).q == 3.0);
    CHECK(tr.at(0.25).q == doctest::Approx(2.0625));
    CHECK(tr.breakpoints() == std::vector<double>{0.5});
    // Breakpoints are sample nodes.
    bool has_half = false;
    for (const auto& p : tr.samples()) has_half |= (p.t == 0.5);
    CHECK(has_half);
  }
}
