#pragma once

// Bilinear null-structure machinery.  The product of half-wave projections
// expands as
//   4 Pi_-(eta) Pi_s(zeta) = sum_{j=1..3} ( q_j^s + b_j^s )(eta, zeta),
// with the q_j degenerating on parallel frequencies (the null part) and the
// b_j uniformly smoothing (vanishing identically at m = 0).  The pairing
//   <beta Pi_+ u, Pi_s v> = 1/4 sum_{j<=3} (Q_j + B_j) + B_4
// is realized here along two independent routes: a direct double-lattice
// Fourier kernel (the oracle; O(n^6), capped at n <= 16) and a physical-space
// route that factors every piece into scalar multipliers (Riesz operators)
// applied to each input, a constant 4x4 matrix, and a pointwise density.
//
// Frequency-hat convention: v^ = v / <v>_m.  At the massless zero frequency
// the hat (and the Riesz symbols with it) is defined as 0 and excluded from
// identity statements.

#include <cstdint>
#include <vector>

#include "dirac/field.hpp"
#include "dirac/projections.hpp"

namespace dirac {

enum class NullPiece { Q1, Q2, Q3, B1, B2, B3, B4 };

inline bool is_q_piece(NullPiece p) {
  return p == NullPiece::Q1 || p == NullPiece::Q2 || p == NullPiece::Q3;
}

// Exact symbol of one piece at a frequency pair.
Matrix4d null_symbol(NullPiece p, WaveSign sign, const Vec3& eta, const Vec3& zeta, Real m);

// Max-abs entry of  4 Pi_-(eta) Pi_s(zeta) - sum_{j<=3}(q_j + b_j).
Real symbol_sum_residual(const Vec3& eta, const Vec3& zeta, Real m, WaveSign sign);

// Oracle route: direct double sum over the frequency lattice, accumulating
//   w^(eta - zeta) += < beta u^(eta), M(eta, zeta) v^(zeta) >
// with modular wrap of the output bin (this is exactly what a pointwise
// product of lattice fields does).  Inputs spectral; output physical.
// Throws CapacityError for n > 16.
ScalarField nullform_fourier(const SpinorField& u, const SpinorField& v, NullPiece p,
                             WaveSign sign, Real m);

// Physical-space route (FFT-fast), Q pieces only.
ScalarField nullform_physical(const SpinorField& u, const SpinorField& v, NullPiece p,
                              WaveSign sign, Real m);

// Physical-space route for the smooth pieces B1..B4.
ScalarField bterm_physical(const SpinorField& u, const SpinorField& v, int j,
                           WaveSign sign, Real m);

// Frozen overall scale of the q/b part of the decomposition (the factor 4
// in the projector-product expansion, inverted).  Fitted once via
// fit_decomposition_scale, frozen here, never re-fitted by checks.
inline constexpr Real kDecompositionScale = 0.25;

// Relative L^2 residual of
//   <beta Pi_+ u, Pi_s v>  vs  c* sum_{j<=3}(Q_j + B_j) + B_4
// on projected inputs.  Inputs spectral.
Real decomposition_residual(const SpinorField& u, const SpinorField& v, WaveSign sign, Real m,
                            Real c_star = kDecompositionScale);

// Least-squares fit of c* on one input pair (diagnostic; expect 0.25 + O(eps)).
Complex fit_decomposition_scale(const SpinorField& u, const SpinorField& v, WaveSign sign, Real m);

// The sharp comparison envelope for the first null symbol:
//   sign +:  |eta-zeta| (|eta-zeta| - ||eta|-|zeta||) / (<eta>_m <zeta>_m)
//   sign -:  (|eta|+|zeta|) (|eta|+|zeta| - |eta-zeta|) / (<eta>_m <zeta>_m)
Real qest_envelope(WaveSign sign, const Vec3& eta, const Vec3& zeta, Real m);

// Spectral (operator 2-) norm of a 4x4 block.
Real operator_norm(const Matrix4d& mat);

struct SymbolBoundResult {
  Real max_ratio = 0;       // max over samples of |q_j| / envelope^a
  Real min_ratio = 0;       // min over samples (meaningful for the a = 1 sharp case)
  std::int64_t evaluated = 0;
  // samples with envelope below 1e-6: near the degenerate directions both
  // symbol and envelope cancel catastrophically and the ratio is noise
  std::int64_t skipped = 0;
};

// Randomized sweep of |q_j^s| / envelope^a over frequency pairs with
// log-uniform magnitudes, uniform directions, plus deliberately near-parallel
// and near-antiparallel pairs.  exponent_a in [0, 1].
SymbolBoundResult symbol_bound_scan(NullPiece p, WaveSign sign, Real exponent_a, Real m,
                                    std::int64_t samples, std::uint64_t seed);

}  // namespace dirac
