#pragma once

// Adaptive Simpson quadrature for smooth 1D integrands.

#include <cmath>
#include <functional>

#include "dirac/types.hpp"

namespace dirac {

namespace detail {

inline Real simpson(Real a, Real fa, Real b, Real fb, Real fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline Real adapt(const std::function<Real(Real)>& f, Real a, Real fa, Real b, Real fb, Real fm,
                  Real whole, Real tol, int depth) {
  const Real m = 0.5 * (a + b);
  const Real lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const Real flm = f(lm), frm = f(rm);
  const Real left = simpson(a, fa, m, fm, flm);
  const Real right = simpson(m, fm, b, fb, frm);
  const Real delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Integral of f over [a, b] to absolute tolerance tol (Richardson-corrected
// adaptive Simpson).  An empty or inverted interval integrates to 0.
inline Real integrate(const std::function<Real(Real)>& f, Real a, Real b, Real tol = 1e-10,
                      int max_depth = 48) {
  if (!(b > a)) return 0.0;
  const Real m = 0.5 * (a + b);
  const Real fa = f(a), fb = f(b), fm = f(m);
  const Real whole = detail::simpson(a, fa, b, fb, fm);
  return detail::adapt(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

}  // namespace dirac
