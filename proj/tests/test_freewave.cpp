#include <doctest.h>

#include <cmath>

#include "dirac/freewave.hpp"
#include "dirac/quadrature.hpp"

using namespace dirac;

TEST_CASE("adaptive quadrature nails smooth closed forms") {
  CHECK(integrate([](Real x) { return x * x; }, 0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(integrate([](Real x) { return std::sin(x); }, 0.0, kPi) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](Real x) { return std::exp(x); }, -1.0, 2.0) ==
        doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-12));
  CHECK(integrate([](Real) { return 1.0; }, 2.0, 2.0) == 0.0);
  CHECK(integrate([](Real) { return 1.0; }, 3.0, 2.0) == 0.0);
}

TEST_CASE("radial endpoints match hand-computed cases") {
  SUBCASE("massless, timelike") {
    const auto e = a_pm(3.0, 1.0, 0.0);
    REQUIRE(e.has_value());
    CHECK(e->a_minus == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e->a_plus == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("massless, spacelike") {
    const auto e = a_pm(1.0, 2.0, 0.0);
    REQUIRE(e.has_value());
    CHECK(e->a_minus == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(e->a_plus == doctest::Approx(1.5).epsilon(1e-14));
  }
  SUBCASE("threshold: radicand zero collapses the interval") {
    // tau^2 - |xi|^2 = 4 m^2 exactly in floating point:
    // 2.5^2 - 2^2 = 2.25 = 4 * 0.75^2
    const auto e = a_pm(2.5, 2.0, 0.75);
    REQUIRE(e.has_value());
    CHECK(e->a_minus == 1.25);
    CHECK(e->a_plus == 1.25);
  }
  SUBCASE("empty constraint surface signals nullopt") {
    // timelike but below threshold: tau^2 - |xi|^2 = 3 < 4 m^2 = 4
    CHECK_FALSE(a_pm(2.0, 1.0, 1.0).has_value());
  }
  SUBCASE("characteristic cone throws") {
    CHECK_THROWS_AS(a_pm(2.0, 2.0, 1.0), SingularConfigError);
    CHECK_THROWS_AS(a_pm(-2.0, 2.0, 0.0), SingularConfigError);
  }
  SUBCASE("degenerate |xi| rejected") {
    CHECK_THROWS_AS(a_pm(1.0, 0.0, 0.0), ContractError);
  }
}

TEST_CASE("closed forms reproduce the analytic values") {
  const auto box = RadialProfile::indicator(0.0, 10.0);
  // m = 0, tau = 3, |xi| = 1: integral of r(3-r) over [1,2] = 13/6
  CHECK(I_plus_closed(box, box, 3.0, 1.0, 0.0) ==
        doctest::Approx(13.0 / 6.0).epsilon(1e-12));
  // m = 0, tau = 1, |xi| = 2: (1/2) integral of r(r-1) over [3/2, 10] = 850/6... / 2
  // -> direct evaluation: (1/|xi|) * [r^3/3 - r^2/2]_{3/2}^{10}
  const Real anti_hi = 1000.0 / 3 - 50.0;
  const Real anti_lo = std::pow(1.5, 3) / 3 - std::pow(1.5, 2) / 2;
  const Real expected = (anti_hi - anti_lo) / 2;
  CHECK(I_minus_closed(box, box, 1.0, 2.0, 0.0) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(850.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("closed-form support laws") {
  const auto box = RadialProfile::indicator(0.0, 10.0);
  SUBCASE("sum kind needs tau > 0 and tau^2 - |xi|^2 >= 4m^2") {
    CHECK(I_plus_closed(box, box, -3.0, 1.0, 0.0) == 0.0);
    CHECK(I_plus_closed(box, box, 1.0, 2.0, 0.0) == 0.0);   // spacelike
    CHECK(I_plus_closed(box, box, 2.0, 1.0, 1.0) == 0.0);   // below mass threshold
    CHECK(I_plus_closed(box, box, 3.0, 1.0, 1.0) > 0.0);
  }
  SUBCASE("difference kind needs |tau| < |xi|") {
    CHECK(I_minus_closed(box, box, 3.0, 1.0, 0.0) == 0.0);
    CHECK(I_minus_closed(box, box, -3.0, 1.0, 0.0) == 0.0);
    CHECK(I_minus_closed(box, box, 0.5, 1.0, 0.0) > 0.0);
    CHECK(I_minus_closed(box, box, -0.5, 1.0, 0.0) > 0.0);
  }
  SUBCASE("disjoint profile supports kill the integral") {
    const auto far = RadialProfile::indicator(50.0, 60.0);
    CHECK(I_plus_closed(far, far, 3.0, 1.0, 0.0) == 0.0);
    const auto inner = RadialProfile::indicator(0.0, 0.1);
    // <eta> <= 0.1 cannot meet a_plus = 1.5 for the difference kind below
    CHECK(I_minus_closed(inner, box, 1.0, 2.0, 0.0) == 0.0);
  }
  SUBCASE("characteristic cone still throws") {
    CHECK_THROWS_AS(I_plus_closed(box, box, 1.0, 1.0, 0.0), SingularConfigError);
    CHECK_THROWS_AS(I_minus_closed(box, box, 1.0, 1.0, 0.0), SingularConfigError);
  }
}

TEST_CASE("profile factories behave") {
  const auto bump = RadialProfile::smooth_bump(1.0, 3.0);
  CHECK(bump(2.0) == 1.0);            // peak at the midpoint
  CHECK(bump(1.0) == 0.0);
  CHECK(bump(3.0) == 0.0);
  CHECK(bump(0.5) == 0.0);            // outside support
  CHECK(bump(2.5) == doctest::Approx(9.0 / 16.0));  // u = 1/2 -> (3/4)^2
  const auto ramp = RadialProfile::ramp(0.0, 2.0);
  CHECK(ramp(1.0) == 0.5);
  CHECK(ramp(3.0) == 0.0);
}

TEST_CASE("brute force matches closed form up to the universal angular constant") {
  const Real two_pi = 2 * kPi;
  SUBCASE("sum kind, compact smooth profiles") {
    const auto f = RadialProfile::smooth_bump(0.4, 1.8);
    const auto g = RadialProfile::smooth_bump(0.3, 1.6);
    const Real closed = I_plus_closed(f, g, 2.4, 0.9, 0.3);
    REQUIRE(closed > 0);
    const Real brute =
        I_pm_bruteforce(ConvolutionKind::SumOfBrackets, f, g, 2.4, Vec3(0, 0, 0.9), 0.3, 0.04);
    CHECK(brute / closed == doctest::Approx(two_pi).epsilon(0.01));
  }
  SUBCASE("difference kind, compact smooth profiles") {
    const auto f = RadialProfile::smooth_bump(0.3, 1.9);
    const auto g = RadialProfile::smooth_bump(0.4, 1.7);
    const Real closed = I_minus_closed(f, g, 0.6, 1.6, 0.4);
    REQUIRE(closed > 0);
    const Real brute = I_pm_bruteforce(ConvolutionKind::DifferenceOfBrackets, f, g, 0.6,
                                       Vec3(0, 0, 1.6), 0.4, 0.04);
    CHECK(brute / closed == doctest::Approx(two_pi).epsilon(0.01));
  }
}

TEST_CASE("brute force value depends on xi only through its norm") {
  const auto f = RadialProfile::smooth_bump(0.4, 1.8);
  const auto g = RadialProfile::smooth_bump(0.3, 1.6);
  const Real a = I_pm_bruteforce(ConvolutionKind::SumOfBrackets, f, g, 2.4,
                                 Vec3(0, 0, 0.9), 0.3, 0.2);
  const Real b = I_pm_bruteforce(ConvolutionKind::SumOfBrackets, f, g, 2.4,
                                 Vec3(0.9 / std::sqrt(2.0), 0, 0.9 / std::sqrt(2.0)), 0.3, 0.2);
  const Real c = I_pm_bruteforce(ConvolutionKind::SumOfBrackets, f, g, 2.4,
                                 Vec3(0, -0.9, 0), 0.3, 0.2);
  CHECK(std::abs(b - a) <= 1e-10 * std::abs(a));
  CHECK(std::abs(c - a) <= 1e-10 * std::abs(a));
}

TEST_CASE("brute force guards") {
  const auto f = RadialProfile::smooth_bump(0.4, 1.8);
  SUBCASE("cell cap raises capacity error") {
    CHECK_THROWS_AS(I_pm_bruteforce(ConvolutionKind::SumOfBrackets, f, f, 2.4,
                                    Vec3(0, 0, 0.9), 0.3, 0.05, /*max_cells=*/1000.0),
                    CapacityError);
  }
  SUBCASE("invalid inputs rejected") {
    CHECK_THROWS_AS(I_pm_bruteforce(ConvolutionKind::SumOfBrackets, f, f, 2.4,
                                    Vec3(0, 0, 0), 0.3, 0.1),
                    ContractError);
    CHECK_THROWS_AS(I_pm_bruteforce(ConvolutionKind::SumOfBrackets, f, f, 2.4,
                                    Vec3(0, 0, 0.9), 0.3, 0.0),
                    ContractError);
  }
  SUBCASE("unreachable sum-kind constraint returns zero cheaply") {
    CHECK(I_pm_bruteforce(ConvolutionKind::SumOfBrackets, f, f, 0.5, Vec3(0, 0, 0.9), 2.0,
                          0.05) == 0.0);
  }
  SUBCASE("disjoint supports return zero") {
    const auto far = RadialProfile::smooth_bump(30.0, 31.0);
    CHECK(I_pm_bruteforce(ConvolutionKind::SumOfBrackets, f, far, 2.4, Vec3(0, 0, 0.9), 0.0,
                          0.05) == 0.0);
  }
}
