// Acceptance gate: six numbered end-to-end criteria, each printing a single
// [PASS]/[FAIL] line with its key measurements and wall time.  Run with no
// arguments for all six, or pass criterion numbers to run a subset:
//
//   acceptance        # criteria 1..6
//   acceptance 2 5    # criteria 2 and 5 only
//
// Exit code 0 iff every requested criterion passed.  Tolerances and
// configurations are fixed here on purpose: this binary is the contract.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "dirac/field.hpp"
#include "dirac/freewave.hpp"
#include "dirac/littlewood_paley.hpp"
#include "dirac/nullform.hpp"
#include "dirac/projections.hpp"
#include "dirac/random_fields.hpp"
#include "dirac/scans.hpp"
#include "dirac/solver.hpp"
#include "dirac/spinor_algebra.hpp"

namespace dirac {
namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

Real pair_dist(const HalfWavePair& a, const HalfWavePair& b, Real s) {
  const Real dp = sobolev_distance(a.plus, b.plus, s);
  const Real dm = sobolev_distance(a.minus, b.minus, s);
  return std::sqrt(dp * dp + dm * dm);
}

SpinorField random_spectral(GridPtr grid, Rng& rng) {
  SpinorField f = SpinorField::zero(grid, Repr::Spectral);
  for (auto& comp : f.comp)
    for (Index i = 0; i < grid->size(); ++i) comp[i] = rng.cnormal();
  return f;
}

// --------------------------------------------------------------- criterion 1
// Matrix identity suite exactly zero; projection identity suite (completeness,
// idempotence, mutual annihilation, commutation with the free flow) below
// 1e-11 on 100 random fields at n = 16 for masses 0 and 1.  Budget 10 s.

bool criterion_1() {
  Stopwatch clock;
  Real algebra = 0.0;
  for (const auto& [name, residual] : identity_residuals<Real>())
    algebra = std::max(algebra, residual);

  auto grid = make_grid(16, 2.0 * kPi);
  Real worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(derive_seed(1001, trial));
    SpinorField f = random_spectral(grid, rng);
    // The massless projector is I/2 at the degenerate zero mode by
    // convention; the identities are claimed away from it.
    SpinorField f0 = f;
    for (auto& comp : f0.comp) comp[grid->index(0, 0, 0)] = 0.0;
    const Real scale = l2_norm(f);

    for (Real m : {0.0, 1.0}) {
      const SpinorField& probe = m == 0.0 ? f0 : f;
      const SpinorField plus = project(probe, m, WaveSign::Plus);
      const SpinorField minus = project(probe, m, WaveSign::Minus);
      SpinorField sum = plus;
      for (int c = 0; c < 4; ++c) sum.comp[c] += minus.comp[c];
      worst = std::max(worst, l2_distance(sum, probe) / scale);
      worst = std::max(
          worst, l2_distance(project(plus, m, WaveSign::Plus), plus) / scale);
      worst =
          std::max(worst, l2_norm(project(plus, m, WaveSign::Minus)) / scale);
      const Real t = 0.37;
      worst = std::max(
          worst, l2_distance(project(free_propagate(probe, m, WaveSign::Plus, t),
                                     m, WaveSign::Plus),
                             free_propagate(plus, m, WaveSign::Plus, t)) /
                     scale);
    }
  }

  const double elapsed = clock.seconds();
  const bool pass = algebra == 0.0 && worst < 1e-11 && elapsed < 10.0;
  std::printf(
      "[%s] criterion 1: matrix identities exactly zero (max %.3g), "
      "projection identities %.3g < 1e-11 on 100 fields, %.1f s < 10 s\n",
      pass ? "PASS" : "FAIL", algebra, worst, elapsed);
  return pass;
}

// --------------------------------------------------------------- criterion 2
// Null decomposition: symbol sum below 1e-12 on 10^4 random frequency pairs;
// beta-pairing decomposition below 1e-10 with the single frozen constant on
// 20 random band-limited field pairs, both signs, masses 0 and 1; the
// Fourier-kernel and physical-space null-form routes agree to 1e-10 relative
// on 8^3 grids.  Budget 2 min.

bool criterion_2() {
  Stopwatch clock;
  Rng rng(20260822ULL);
  Real symbol = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Vec3 eta(rng.uniform() * 8.0 - 4.0, rng.uniform() * 8.0 - 4.0,
                   rng.uniform() * 8.0 - 4.0);
    const Vec3 zeta(rng.uniform() * 8.0 - 4.0, rng.uniform() * 8.0 - 4.0,
                    rng.uniform() * 8.0 - 4.0);
    for (Real m : {0.0, 1.0})
      for (WaveSign sign : {WaveSign::Plus, WaveSign::Minus})
        symbol = std::max(symbol, symbol_sum_residual(eta, zeta, m, sign));
  }

  auto grid = make_grid(8, 2.0 * kPi);
  Real decomposition = 0.0;
  Real routes = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Rng trial_rng(derive_seed(2002, trial));
    SpinorField a = random_spinor_band(grid, 2.0, trial_rng);
    SpinorField b = random_spinor_band(grid, 2.0, trial_rng);
    for (Real m : {0.0, 1.0})
      for (WaveSign sign : {WaveSign::Plus, WaveSign::Minus}) {
        const SpinorField u = project(a, m, WaveSign::Plus);
        const SpinorField v = project(b, m, sign);
        decomposition =
            std::max(decomposition, decomposition_residual(u, v, sign, m));
        if (trial < 5)
          for (NullPiece piece :
               {NullPiece::Q1, NullPiece::Q2, NullPiece::Q3}) {
            const ScalarField fast = nullform_physical(u, v, piece, sign, m);
            const ScalarField slow = nullform_fourier(u, v, piece, sign, m);
            Real diff = 0.0;
            Real ref = 0.0;
            for (Index i = 0; i < fast.data.size(); ++i) {
              diff += std::norm(fast.data[i] - slow.data[i]);
              ref += std::norm(slow.data[i]);
            }
            routes = std::max(routes, std::sqrt(diff / ref));
          }
      }
  }

  const double elapsed = clock.seconds();
  const bool pass = symbol < 1e-12 && decomposition < 1e-10 &&
                    routes < 1e-10 && elapsed < 120.0;
  std::printf(
      "[%s] criterion 2: symbol sum %.3g < 1e-12 on 10^4 pairs, "
      "decomposition %.3g < 1e-10, route agreement %.3g < 1e-10, "
      "%.1f s < 120 s\n",
      pass ? "PASS" : "FAIL", symbol, decomposition, routes, elapsed);
  return pass;
}

// --------------------------------------------------------------- criterion 3
// Resonance-integral oracle: the brute-force/closed-form ratio is the
// azimuthal constant 2 pi, consistent to 2% across >= 10 configurations, and
// the analytic values I+ = 13/6 (tau=3, |xi|=1, m=0, unit profiles on [0,10])
// and I- = 850/6 (tau=1, |xi|=2) are reproduced to 0.5% by the brute force at
// the finest mollifier width.  Budget 5 min.

bool criterion_3() {
  Stopwatch clock;
  const auto box10 = RadialProfile::indicator(0.0, 10.0);
  const Real i_plus_exact = 13.0 / 6.0;
  const Real i_minus_exact = 850.0 / 6.0;

  const Real closed_plus = I_plus_closed(box10, box10, 3.0, 1.0, 0.0);
  const Real closed_minus = I_minus_closed(box10, box10, 1.0, 2.0, 0.0);
  const Real closed_dev =
      std::max(std::abs(closed_plus / i_plus_exact - 1.0),
               std::abs(closed_minus / i_minus_exact - 1.0));

  const CalibrationReport report = calibrate_oracle(default_oracle_probes());
  const bool enough = report.samples.size() >= 10;

  // Width sweep on the analytic configurations; the finest width carries the
  // 0.5% assertion, the coarser ones document convergence.  The finest
  // difference-kind integral needs ~7e9 quadrature cells, so the sweep gets
  // an explicit cell budget above the library default.
  const double sweep_cells = 1.0e10;
  Real plus_dev = 0.0;
  Real minus_dev = 0.0;
  for (const Real eps : {0.16, 0.08, 0.04}) {
    const Real brute_plus = I_pm_bruteforce(ConvolutionKind::SumOfBrackets,
                                            box10, box10, 3.0, Vec3(0, 0, 1.0),
                                            0.0, eps, sweep_cells);
    const Real brute_minus = I_pm_bruteforce(
        ConvolutionKind::DifferenceOfBrackets, box10, box10, 1.0,
        Vec3(0, 0, 2.0), 0.0, eps, sweep_cells);
    plus_dev = std::abs(brute_plus / (2.0 * kPi * i_plus_exact) - 1.0);
    minus_dev = std::abs(brute_minus / (2.0 * kPi * i_minus_exact) - 1.0);
    std::printf("  width %.2f: I+ deviation %.3g, I- deviation %.3g\n", eps,
                plus_dev, minus_dev);
  }

  const double elapsed = clock.seconds();
  const bool pass = closed_dev < 1e-12 && enough &&
                    report.max_relative_spread < 0.02 && plus_dev < 0.005 &&
                    minus_dev < 0.005 && elapsed < 300.0;
  std::printf(
      "[%s] criterion 3: ratio spread %.3g < 2%% over %zu configs, closed "
      "forms exact to %.3g, finest-width I+ %.3g and I- %.3g < 0.5%%, "
      "%.0f s < 300 s\n",
      pass ? "PASS" : "FAIL", report.max_relative_spread,
      report.samples.size(), closed_dev, plus_dev, minus_dev, elapsed);
  return pass;
}

// --------------------------------------------------------------- criterion 4
// Dispersive scaling scans at n = 32, 32 time samples, 8 trials per cell,
// fitted over the common dyadic scale in {2, 4, 8}: the Strichartz q = 4
// exponent (predicted 1/2), the bilinear ++ and +- same-scale exponents, and
// the null-form ++ same-scale exponent each stay within +0.3 of prediction,
// and the null/plain norm ratio decreases monotonically in the scale.
// Budget 20 min.

bool criterion_4() {
  Stopwatch clock;
  ScanConfig cfg;  // n = 32, nt = 32, window 2 pi, 8 trials, m = 0

  const StrichartzScanResult st = strichartz_scan(cfg, 8.0, 4.0, 4.0);
  const ScalingScanResult bpp =
      bilinear_scan(cfg, Interaction::PlusPlus, 1.0, 8.0, 8.0);
  const ScalingScanResult bpm =
      bilinear_scan(cfg, Interaction::PlusMinus, 1.0, 8.0, 8.0);
  const ScalingScanResult npp =
      nullform_scan(cfg, 1, Interaction::PlusPlus, 1.0, 8.0, 8.0);

  auto cells_ok = [](const std::vector<ScanCell>& cells) {
    if (cells.size() < 3) return false;
    for (const ScanCell& c : cells)
      if (c.norms.size() < 8) return false;
    return true;
  };
  const bool shape = cells_ok(st.cells) && cells_ok(bpp.cells) &&
                     cells_ok(bpm.cells) && cells_ok(npp.cells);

  auto excess_ok = [](Real fitted, Real predicted) {
    return std::isfinite(fitted) && fitted <= predicted + 0.3;
  };
  const bool exponents = excess_ok(st.fitted_exponent, st.predicted_exponent) &&
                         excess_ok(bpp.fitted_exponent, bpp.predicted_exponent) &&
                         excess_ok(bpm.fitted_exponent, bpm.predicted_exponent) &&
                         excess_ok(npp.fitted_exponent, npp.predicted_exponent);

  bool gain_monotone = npp.cells.size() >= 2;
  for (std::size_t i = 1; i < npp.cells.size(); ++i)
    gain_monotone = gain_monotone &&
                    npp.cells[i].mean / npp.cells[i].plain_mean <
                        npp.cells[i - 1].mean / npp.cells[i - 1].plain_mean;

  std::printf(
      "  strichartz %.3f (pred %.3f), bilinear ++ %.3f (pred %.3f), "
      "bilinear +- %.3f (pred %.3f), null ++ %.3f (pred %.3f)\n",
      st.fitted_exponent, st.predicted_exponent, bpp.fitted_exponent,
      bpp.predicted_exponent, bpm.fitted_exponent, bpm.predicted_exponent,
      npp.fitted_exponent, npp.predicted_exponent);

  const double elapsed = clock.seconds();
  const bool pass = shape && exponents && gain_monotone && elapsed < 1200.0;
  std::printf(
      "[%s] criterion 4: four fitted exponents within +0.3 of prediction "
      "over 3 scales x 8 trials: %s; null/plain gain monotone: %s; "
      "%.0f s < 1200 s\n",
      pass ? "PASS" : "FAIL", exponents && shape ? "yes" : "no",
      gain_monotone ? "yes" : "no", elapsed);
  return pass;
}

// --------------------------------------------------------------- criterion 5
// Solver: relative L2 drift below 1e-8 over T = 1 at n = 32, dt = 1e-3,
// eps = 0.01, m = 1; fourth-order self-convergence (order >= 3.7); Picard
// contraction with every ratio below 0.5 and geometric decay at eps = 0.01,
// with Picard/ETD agreement below 1e-6 in H^s at T = 0.5; and the scattering
// pullback residuals over [T/2, T] strictly smaller than over [0, T/2] at
// s = 0.1.  Budget 10 min.

bool criterion_5() {
  Stopwatch clock;

  SimConfig drift_cfg;  // n = 32, dt = 1e-3, T = 1, eps = 0.01, m = 1
  drift_cfg.snapshot_every = 100;
  const Trajectory traj = evolve(drift_cfg);
  Real drift = 0.0;
  for (const DiagnosticsRow& row : traj.rows)
    drift = std::max(drift, std::abs(row.l2_drift));
  const bool drift_ok = !traj.blowup_time.has_value() && drift < 1e-8;

  SimConfig conv_cfg;
  conv_cfg.n = 8;
  conv_cfg.epsilon = 1.0;
  conv_cfg.dt = 1e-2;
  conv_cfg.T = 0.2;
  conv_cfg.m = 1.0;
  conv_cfg.seed = 3;
  conv_cfg.snapshot_every = 1 << 20;
  const HalfWavePair conv_data = initial_data(conv_cfg);
  auto run = [&](Real dt) {
    SimConfig c = conv_cfg;
    c.dt = dt;
    return evolve_from(conv_data, c).snapshots.back();
  };
  const HalfWavePair ref = run(1.25e-3);
  const Real e1 = pair_dist(run(2e-2), ref, conv_cfg.sobolev_s);
  const Real e2 = pair_dist(run(1e-2), ref, conv_cfg.sobolev_s);
  const Real order = std::log2(e1 / e2);
  const bool order_ok = order >= 3.7;

  SimConfig picard_cfg;
  picard_cfg.n = 16;
  picard_cfg.epsilon = 0.01;
  picard_cfg.dt = 5e-3;
  picard_cfg.T = 0.5;
  picard_cfg.m = 1.0;
  picard_cfg.seed = 13;
  const HalfWavePair picard_data = initial_data(picard_cfg);
  const PicardResult picard =
      picard_iterate(picard_data, picard_cfg.T, 4, picard_cfg.m,
                     picard_cfg.sobolev_s);
  bool ratios_ok = picard.contracting && !picard.diverged;
  for (const Real r : picard.ratios) ratios_ok = ratios_ok && r < 0.5;
  const Trajectory etd = evolve_from(picard_data, picard_cfg);
  const Real agreement =
      pair_dist(picard.final, etd.snapshots.back(), picard_cfg.sobolev_s);
  const bool picard_ok = ratios_ok && agreement < 1e-6;

  const ScatterReport sp =
      scattering_profile(traj, WaveSign::Plus, 0.1, drift_cfg.m);
  const ScatterReport sm =
      scattering_profile(traj, WaveSign::Minus, 0.1, drift_cfg.m);
  const bool scatter_ok =
      sp.max_residual_late < sp.max_residual_early &&
      sm.max_residual_late < sm.max_residual_early;
  std::printf(
      "  scattering residuals: plus late/early %.3g/%.3g, minus late/early "
      "%.3g/%.3g\n",
      sp.max_residual_late, sp.max_residual_early, sm.max_residual_late,
      sm.max_residual_early);

  const double elapsed = clock.seconds();
  const bool pass =
      drift_ok && order_ok && picard_ok && scatter_ok && elapsed < 600.0;
  std::printf(
      "[%s] criterion 5: L2 drift %.3g < 1e-8, convergence order %.3f >= "
      "3.7, picard ratios < 0.5 with ETD agreement %.3g < 1e-6: %s, "
      "scattering late < early: %s, %.0f s < 600 s\n",
      pass ? "PASS" : "FAIL", drift, order, agreement,
      picard_ok ? "yes" : "no", scatter_ok ? "yes" : "no", elapsed);
  return pass;
}

// --------------------------------------------------------------- criterion 6
// Weighted dyadic convolution sums: for (s, delta) = (0.5, 0.1) the maximal
// ratio over 100 random sequences does not grow when the support doubles;
// the negative control delta >= s ((s, delta) = (0.1, 0.5)) grows.
// Budget 1 min.

bool criterion_6() {
  Stopwatch clock;
  const std::uint64_t seed = 20260822ULL;
  const Real r1 = dyadic_sum_max_ratio(0.5, 0.1, 10, 100, seed);
  const Real r2 = dyadic_sum_max_ratio(0.5, 0.1, 20, 100, seed);
  const Real g1 = dyadic_sum_max_ratio(0.1, 0.5, 10, 100, seed);
  const Real g2 = dyadic_sum_max_ratio(0.1, 0.5, 20, 100, seed);

  const bool bounded = r2 <= 1.1 * r1;
  const bool control_grows = g2 > 2.0 * g1;
  const double elapsed = clock.seconds();
  const bool pass = bounded && control_grows && elapsed < 60.0;
  std::printf(
      "[%s] criterion 6: (0.5, 0.1) ratio %.3g -> %.3g under doubling "
      "(bounded: %s), control (0.1, 0.5) %.3g -> %.3g (grows: %s), "
      "%.1f s < 60 s\n",
      pass ? "PASS" : "FAIL", r1, r2, bounded ? "yes" : "no", g1, g2,
      control_grows ? "yes" : "no", elapsed);
  return pass;
}

}  // namespace
}  // namespace dirac

int main(int argc, char** argv) {
  using Criterion = std::function<bool()>;
  const std::vector<Criterion> criteria = {
      dirac::criterion_1, dirac::criterion_2, dirac::criterion_3,
      dirac::criterion_4, dirac::criterion_5, dirac::criterion_6};

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1..6 ...]\n");
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty())
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k)
      selected.push_back(k);

  int failures = 0;
  for (const int k : selected) {
    bool ok = false;
    try {
      ok = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion %d: exception: %s\n", k, e.what());
    }
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
