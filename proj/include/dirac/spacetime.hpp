#pragma once

// Fields sampled on a space-time slab [0, window) x torus, with a discrete
// Fourier transform in time mirroring the spatial convention:
//
//   u(t_j) = sum_k c_k exp(i tau_k t_j),   tau_k = (2 pi / window) * k,
//
// k running over signed bins -nt/2 .. nt/2 - 1 and t_j = j * window / nt.
// A temporally periodic free half wave with propagator sign s concentrates
// at tau = -s <xi>_m, so modulation weights measure |tau + s <xi>_m|.

#include <vector>

#include "dirac/field.hpp"
#include "dirac/projections.hpp"
#include "dirac/types.hpp"

namespace dirac {

enum class TimeRepr { Physical, Spectral };

struct SpacetimeField {
  GridPtr grid;
  Real window = 0;
  TimeRepr trepr = TimeRepr::Physical;
  std::vector<SpinorField> slices;

  Index nt() const { return static_cast<Index>(slices.size()); }
  Real dt() const { return window / static_cast<Real>(nt()); }
  Real dtau() const { return 2 * kPi / window; }
  // Signed time frequency of spectral slice k (FFT bin order).
  Real tau(Index k) const;
};

// Samples exp(-i s t <D>_m) f0 on nt uniform times in [0, window); slices are
// spatially spectral.  nt must be a power of two (>= 4).
SpacetimeField free_wave_history(const SpinorField& f0, WaveSign sign, Real m, Real window,
                                 Index nt);

SpacetimeField time_forward(const SpacetimeField& u);   // physical -> spectral in time
SpacetimeField time_inverse(const SpacetimeField& u);   // spectral -> physical in time

// Dyadic modulation localization relative to the characteristic surface of
// the sign-s half wave:
//   At:      weight rho_lambda(d)            (dyadic partition piece)
//   Less:    weight chi(2 d / lambda)        (modulation < lambda)
//   Geq:     weight 1 - chi(2 d / lambda)    (complement; Less + Geq == 1)
// with d = |tau + s <xi>_m|.  Input may be in either time representation;
// the result comes back in the same one.
enum class ModBand { At, Less, Geq };

SpacetimeField modulation_project(const SpacetimeField& u, WaveSign sign, Real lambda, Real m,
                                  ModBand band);

// Space-time L^2 norm (time-physical: sum over slices weighted by dt;
// time-spectral: Plancherel-equivalent value).
Real st_l2_norm(const SpacetimeField& u);

// Mixed norm L^q_t L^r_x on a time-physical field; q or r may be
// std::numeric_limits<Real>::infinity() for the sup in that variable.
Real mixed_norm(const SpacetimeField& u, Real q, Real r);

}  // namespace dirac
