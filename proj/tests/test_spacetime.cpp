#include <doctest.h>

#include <cmath>
#include <limits>

#include "dirac/cutoffs.hpp"
#include "dirac/multiplier.hpp"
#include "dirac/random_fields.hpp"
#include "dirac/spacetime.hpp"

using namespace dirac;

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

SpacetimeField single_spacetime_mode(GridPtr g, Real window, Index nt, Index kx, Index kt,
                                     const Spinord& amp) {
  SpacetimeField u;
  u.grid = g;
  u.window = window;
  u.trepr = TimeRepr::Physical;
  const Real dtau = 2 * kPi / window;
  const Real tau = dtau * static_cast<Real>(kt);
  for (Index j = 0; j < nt; ++j) {
    const Real t = window / static_cast<Real>(nt) * static_cast<Real>(j);
    SpinorField s = SpinorField::zero(g, Repr::Spectral);
    const Index idx = g->index(kx, 0, 0);
    s.set(idx, amp * std::exp(Complex(0, tau * t)));
    u.slices.push_back(s);
  }
  return u;
}

}  // namespace

TEST_CASE("time transform pair identifies a single temporal mode") {
  const auto g = make_grid(4, 2 * kPi);
  const Index nt = 8;
  const Spinord amp(Complex(0.3, -0.7), Complex(1, 0.2), Complex(0, 0), Complex(-0.5, 0));
  auto u = single_spacetime_mode(g, 2 * kPi, nt, 1, 3, amp);
  const auto spec = time_forward(u);
  CHECK(spec.trepr == TimeRepr::Spectral);
  // All mass in temporal bin 3 at spatial bin (1,0,0).
  for (Index k = 0; k < nt; ++k) {
    for (int c = 0; c < 4; ++c) {
      for (Index i = 0; i < g->size(); ++i) {
        const Complex v = spec.slices[k].comp[c][i];
        if (k == 3 && i == g->index(1, 0, 0)) {
          CHECK(std::abs(v - amp[c]) < 1e-12);
        } else {
          CHECK(std::abs(v) < 1e-12);
        }
      }
    }
  }
  // Negative bin: tau of slice nt-1 is -dtau.
  CHECK(spec.tau(nt - 1) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(spec.tau(3) == doctest::Approx(3.0).epsilon(1e-14));
  // Round trip.
  const auto back = time_inverse(spec);
  for (Index j = 0; j < nt; ++j) {
    for (int c = 0; c < 4; ++c) {
      CHECK((back.slices[j].comp[c] - u.slices[j].comp[c]).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("free wave history concentrates at tau = -sign * bracket") {
  // n = 8, box 2*pi: <xi>_m <= sqrt(1+48) = 7, far below the temporal
  // Nyquist nt/2 * dtau = 256, so all off-surface content is rectangular-
  // window leakage.  Its Dirichlet tails decay like 1/(pi k) per bin, which
  // is why the "small" threshold needs a genuinely large lambda.
  const auto g = make_grid(8, 2 * kPi);
  const Index nt = 512;
  Rng rng(2026);
  auto f0 = random_spinor(g, rng);
  normalize_l2(f0);
  const Real m = 1.0;

  for (const WaveSign sign : {WaveSign::Plus, WaveSign::Minus}) {
    const auto hist = free_wave_history(f0, sign, m, 2 * kPi, nt);
    const Real total = st_l2_norm(hist);
    CHECK(total == doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-10));

    // Matching sign, large scale: almost nothing lives at modulation >= 128.
    const auto far = modulation_project(hist, sign, 128.0, m, ModBand::Geq);
    CHECK(st_l2_norm(far) / total < 0.05);

    // Discrimination at moderate scale: against the wrong sign the wave sits
    // at distance 2<xi>_m (>= 8 for most of this grid's bins), so the
    // far-modulation projection keeps the bulk, while for the matching sign
    // it only sees window leakage.
    const Real frac_match =
        st_l2_norm(modulation_project(hist, sign, 8.0, m, ModBand::Geq)) / total;
    const Real frac_wrong =
        st_l2_norm(modulation_project(hist, flip(sign), 8.0, m, ModBand::Geq)) / total;
    CHECK(frac_wrong > 0.5);
    CHECK(frac_match < 0.5 * frac_wrong);
  }
}

TEST_CASE("modulation bands form an exact partition") {
  const auto g = make_grid(4, 2 * kPi);
  const Index nt = 8;
  Rng rng(11);
  SpacetimeField u;
  u.grid = g;
  u.window = 2 * kPi;
  u.trepr = TimeRepr::Spectral;
  for (Index j = 0; j < nt; ++j) u.slices.push_back(random_spinor(g, rng));

  SUBCASE("Less + Geq == identity exactly") {
    for (const Real lambda : {1.0, 4.0}) {
      const auto lo = modulation_project(u, WaveSign::Plus, lambda, 0.5, ModBand::Less);
      const auto hi = modulation_project(u, WaveSign::Plus, lambda, 0.5, ModBand::Geq);
      for (Index j = 0; j < nt; ++j) {
        for (int c = 0; c < 4; ++c) {
          const auto sum = lo.slices[j].comp[c] + hi.slices[j].comp[c];
          CHECK((sum - u.slices[j].comp[c]).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
    }
  }
  SUBCASE("dyadic At pieces telescope to the Less bump") {
    // sum_{lambda <= 2^K} rho_lambda(d) = chi(d / 2^K); with 2^K = 32 above
    // every modulation in this tiny slab, that's identically 1.
    const Real top = 32.0;
    SpacetimeField acc = u;
    for (auto& s : acc.slices)
      for (auto& c : s.comp) c.setZero();
    for (Real lambda = 1.0; lambda <= top; lambda *= 2) {
      const auto piece = modulation_project(u, WaveSign::Minus, lambda, 0.0, ModBand::At);
      for (Index j = 0; j < nt; ++j)
        for (int c = 0; c < 4; ++c) acc.slices[j].comp[c] += piece.slices[j].comp[c];
    }
    // Max modulation here: |tau| <= 4, <xi> <= sqrt(3)*2 -> d < 8 <= 32.
    for (Index j = 0; j < nt; ++j)
      for (int c = 0; c < 4; ++c)
        CHECK((acc.slices[j].comp[c] - u.slices[j].comp[c]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("space-time norms on a constant-in-time field") {
  const auto g = make_grid(4, 2 * kPi);
  const Index nt = 8;
  Rng rng(7);
  auto f = random_spinor(g, rng);
  normalize_l2(f);
  SpacetimeField u;
  u.grid = g;
  u.window = 4.0;
  u.trepr = TimeRepr::Physical;
  for (Index j = 0; j < nt; ++j) u.slices.push_back(f);

  // L^2_t L^2_x = sqrt(window) * ||f||; mixed(2,2) agrees with st_l2_norm.
  CHECK(st_l2_norm(u) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mixed_norm(u, 2.0, 2.0) == doctest::Approx(2.0).epsilon(1e-10));
  // L^inf_t L^2_x = ||f|| = 1.
  CHECK(mixed_norm(u, kInf, 2.0) == doctest::Approx(1.0).epsilon(1e-10));
  // L^4_t L^2_x = window^{1/4}.
  CHECK(mixed_norm(u, 4.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  // Monotone in r for a fixed q on a probability-normalized measure? Not in
  // general on the torus, but L^inf_x dominates L^2_x / sqrt(vol):
  const Real linf = mixed_norm(u, kInf, kInf);
  CHECK(linf * std::sqrt(g->box_volume()) >= mixed_norm(u, kInf, 2.0) - 1e-12);
}

TEST_CASE("spacetime contract checks") {
  const auto g = make_grid(4, 2 * kPi);
  Rng rng(3);
  const auto f0 = random_spinor(g, rng);
  CHECK_THROWS_AS(free_wave_history(f0, WaveSign::Plus, 1.0, 0.0, 8), ContractError);
  CHECK_THROWS_AS(free_wave_history(f0, WaveSign::Plus, 1.0, 1.0, 6), ContractError);
  auto u = free_wave_history(f0, WaveSign::Plus, 1.0, 1.0, 8);
  CHECK_THROWS_AS(time_inverse(u), ContractError);                 // wrong time repr
  CHECK_THROWS_AS(modulation_project(u, WaveSign::Plus, 3.0, 1.0, ModBand::At),
                  ContractError);                                  // non-dyadic scale
  const auto spec = time_forward(u);
  CHECK_THROWS_AS(time_forward(spec), ContractError);
  CHECK_THROWS_AS(mixed_norm(spec, 2.0, 2.0), ContractError);
}
