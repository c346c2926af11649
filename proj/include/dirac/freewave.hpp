#pragma once

// Convolutions of two free waves restricted to the characteristic surface:
//
//   sum kind:         integral of f(|eta|) g(|xi-eta|) delta(tau - <eta>_m - <xi-eta>_m) d eta
//   difference kind:  same with  delta(tau - <eta>_m + <xi-eta>_m)
//
// Two independent evaluations are provided.  The closed form reduces the
// integral to one radial variable r = <eta>_m between kinematic endpoints
// (a_pm below) and integrates with adaptive quadrature; by convention it
// carries NO overall angular constant.  The brute force replaces the delta
// by a unit-mass Gaussian of width eps and integrates over a 3D midpoint
// grid; the ratio brute/closed must then come out as one universal constant
// (the angular factor 2*pi), independent of every parameter — that constancy
// is the calibration experiment.
//
// The brute force evaluates in a frame with xi along the z axis, so its
// value depends on the vector xi only through |xi| and rotation invariance
// is exact by construction.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dirac/types.hpp"

namespace dirac {

enum class ConvolutionKind {
  SumOfBrackets,        // tau = <eta> + <xi-eta>; support tau > 0, tau^2 - |xi|^2 >= 4m^2
  DifferenceOfBrackets  // tau = <eta> - <xi-eta>; support |tau| < |xi|
};

struct RadialProfile {
  std::string description;
  std::function<Real(Real)> fn;
  Real support_lo = 0;
  Real support_hi = 0;

  Real operator()(Real r) const {
    return (r < support_lo || r > support_hi) ? 0.0 : fn(r);
  }

  static RadialProfile indicator(Real lo, Real hi);
  static RadialProfile smooth_bump(Real lo, Real hi);  // (1-u^2)^2 plateau on [lo, hi]
  static RadialProfile ramp(Real lo, Real hi);         // r / hi on [lo, hi]
};

struct RadialEndpoints {
  Real a_minus;
  Real a_plus;
};

// Kinematic endpoints a_pm = tau/2 +- (|xi|/2) sqrt((tau^2-|xi|^2-4m^2)/(tau^2-|xi|^2)).
// tau^2 == |xi|^2 is the characteristic cone -> SingularConfigError; a
// negative radicand means the constraint surface is empty -> nullopt.
std::optional<RadialEndpoints> a_pm(Real tau, Real xi_norm, Real m);

// Radial closed forms (angular constant omitted; see header comment):
//   sum kind:         (1/|xi|) integral_{a-}^{a+}  r (tau - r) f g dr
//   difference kind:  (1/|xi|) integral_{a+}^{inf} r (r - tau) f g dr,
// with the infinite limit cut off by the profile supports, and both clipped
// to where the profile arguments sqrt(r^2 - m^2), sqrt((tau -+ r)^2 - m^2)
// live inside the supports.  Outside the kinematic support: exactly 0.
Real I_plus_closed(const RadialProfile& f, const RadialProfile& g, Real tau, Real xi_norm,
                   Real m, Real quad_tol = 1e-10);
Real I_minus_closed(const RadialProfile& f, const RadialProfile& g, Real tau, Real xi_norm,
                    Real m, Real quad_tol = 1e-10);

// Mollified 3D quadrature: delta -> Gaussian of width eps, midpoint rule at
// spacing <= eps/4.  Throws CapacityError when that resolution would exceed
// max_cells grid cells.
Real I_pm_bruteforce(ConvolutionKind kind, const RadialProfile& f, const RadialProfile& g,
                     Real tau, const Vec3& xi, Real m, Real eps,
                     double max_cells = 4.0e9);

// ------------------------------------------------------------ calibration ---

struct OracleProbe {
  std::string label;
  ConvolutionKind kind;
  Real tau;
  Real xi_norm;
  Real m;
  RadialProfile f;
  RadialProfile g;
  Real eps;  // mollifier width used for this probe
};

struct OracleSample {
  std::string label;
  Real closed = 0;
  Real brute = 0;
  Real ratio = 0;  // brute / closed
};

struct CalibrationReport {
  std::vector<OracleSample> samples;
  Real mean_ratio = 0;
  Real max_relative_spread = 0;  // max over samples of |ratio/mean - 1|
};

// Runs every probe through both routes and aggregates the ratios.
CalibrationReport calibrate_oracle(const std::vector<OracleProbe>& probes,
                                   double max_cells = 4.0e9);

// The standard probe set: the two analytic configurations plus a spread of
// random-ish masses, geometries and profiles for both kinds (>= 10 total).
std::vector<OracleProbe> default_oracle_probes();

}  // namespace dirac
