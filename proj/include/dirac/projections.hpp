#pragma once

// Half-wave decomposition.  The spectral projections
//   Pi_pm(xi) = (I +- <xi>_m^{-1} (alpha . xi + m beta)) / 2
// are idempotent, mutually annihilating, sum to I, and intertwine with beta
// as  beta Pi_pm = Pi_mp beta +- m <D>_m^{-1}.  At the degenerate point
// xi = 0, m = 0 both projections are defined as I/2 (the symbol has no
// limit there; this choice keeps Pi_+ + Pi_- = I exact, and the massless
// zero mode is excluded from identity checks that need more).

#include "dirac/field.hpp"

namespace dirac {

enum class WaveSign : int { Plus = +1, Minus = -1 };

inline int sign_of(WaveSign s) { return static_cast<int>(s); }
inline WaveSign flip(WaveSign s) { return s == WaveSign::Plus ? WaveSign::Minus : WaveSign::Plus; }

Matrix4d projector_symbol(const Vec3& xi, Real m, WaveSign sign);

// Pi_pm applied as a spectral multiplier (input must be spectral).
SpinorField project(const SpinorField& f, Real m, WaveSign sign);

struct HalfWavePair {
  SpinorField plus;
  SpinorField minus;
  SpinorField recombine() const;
};

HalfWavePair split(const SpinorField& f, Real m);

// S_m(sign * t): multiplication by exp(-i * sign * t * <xi>_m).
SpinorField free_propagate(const SpinorField& f, Real m, WaveSign sign, Real t);
ScalarField free_propagate(const ScalarField& f, Real m, WaveSign sign, Real t);

// <D>_m^{-1} as a multiplier; for m == 0 the zero mode is annihilated
// (symbol undefined there), mirroring the Riesz-operator convention.
SpinorField inverse_bracket(const SpinorField& f, Real m);

}  // namespace dirac
