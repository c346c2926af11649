#pragma once

// Empirical dyadic-scaling scans: sampled space-time norms of frequency-
// localized free waves and their bilinear interactions, compared against the
// predicted dyadic bounds, plus the weighted dyadic convolution-sum bound
// used by the contraction argument.
//
// Probe data are spectral coefficients drawn i.i.d. complex Gaussian on the
// rho_lambda band and normalized in L^2 ("P_lambda of white data").  Free
// waves are sampled on nt slices of a window [0, T); pointwise products are
// formed on the doubled grid so that no product frequency aliases back into
// the measured band.  Fitted exponents are least-squares slopes of
// log2(mean norm) against log2(scale); the scans verify that measured growth
// never exceeds the predicted exponent by more than a fixed margin — they
// probe typical behavior, not sharpness.

#include <cstdint>
#include <string>
#include <vector>

#include "dirac/field.hpp"
#include "dirac/projections.hpp"
#include "dirac/random_fields.hpp"

namespace dirac {

// Which pair of half-wave evolutions interacts: e^{-it<D>} against itself,
// or against its conjugate-sign partner.
enum class Interaction { PlusPlus, PlusMinus };

struct ScanConfig {
  int n = 32;               // coarse grid; products are dealiased on 2n
  Real box = 2.0 * kPi;
  Real m = 0.0;
  Real window = 2.0 * kPi;  // time window length
  int nt = 32;              // time samples across the window
  int trials = 8;
  std::uint64_t seed = 20260822ULL;
};

// One measured cell of a scan: an output scale mu (0 = no output
// localization) against input scales (lambda1, lambda2).
struct ScanCell {
  Real mu = 0.0;
  Real lambda1 = 0.0;
  Real lambda2 = 0.0;
  std::vector<Real> norms;        // per-trial measured norms, trial order
  Real mean = 0.0;
  Real predicted = 0.0;           // dyadic bound with unit constant
  std::vector<Real> plain_norms;  // null scans only: unweighted-pairing norms
  Real plain_mean = 0.0;          // 0 when not applicable
};

// Result of a bilinear or null-form scan.  The designated cell
// (mu, lambda1, lambda2) is always measured; when lambda1 == lambda2 the scan
// also measures the same-scale family ell in [max(2, 2 mu), lambda1] at fixed
// mu and fits the growth exponent in the common input scale.  The fit is
// reported only when the family has at least 3 dyadic points (NaN otherwise).
struct ScalingScanResult {
  Interaction interaction = Interaction::PlusPlus;
  int piece = 0;                   // 0: plain product; 1..3: null piece Q_j
  Real mu = 0.0;
  Real lambda1 = 0.0;
  Real lambda2 = 0.0;
  Real measured_norm = 0.0;        // mean at the designated cell
  Real predicted_bound = 0.0;      // case table at the designated cell
  std::vector<ScanCell> cells;     // same-scale family, increasing scale
  Real fitted_exponent = 0.0;      // slope of log2 mean vs log2 ell; NaN if <3 cells
  Real predicted_exponent = 0.0;   // exponent of the bound in the common scale
};

struct StrichartzScanResult {
  Real q = 0.0;
  Real r = 0.0;
  std::vector<ScanCell> cells;     // lambda1 == lambda2 == lambda, mu == 0
  Real fitted_exponent = 0.0;      // NaN if fewer than 3 scales
  Real predicted_exponent = 0.0;   // 2/q
};

// Predicted dyadic bounds (unit constant).  Comparable scales
// (max/min <= 2): plain ++ -> mu, plain +- -> sqrt(mu lambda1),
// null ++ -> mu sqrt(mu/lambda1), null +- -> mu.  Separated scales
// (max/min > 2): min(lambda1, lambda2) in every case.
Real predicted_bilinear_bound(Interaction ia, Real mu, Real lambda1, Real lambda2);
Real predicted_nullform_bound(Interaction ia, Real mu, Real lambda1, Real lambda2);

// Least-squares slope of log2(y) against log2(x); requires matching sizes
// and at least 2 points with positive entries.
Real fitted_exponent(const std::vector<Real>& xs, const std::vector<Real>& ys);

// rho_mu-weighted space-time L^2 norm of the pointwise product of the two
// evolved fields: slices of e^{-i s1 t <D>_m} f times e^{-i s2 t <D>_m} g are
// multiplied on the doubled grid and the output band mu is measured.  Inputs
// spectral on the coarse grid.
Real product_band_norm(const ScanConfig& cfg, const ScalarField& f, WaveSign s1,
                       const ScalarField& g, WaveSign s2, Real mu);

// Same measurement for a spinor pair: the Q_j null-form density and the
// unweighted beta-pairing density of the evolved pair, both on the doubled
// grid.  u0 evolves with sign Plus, v0 with s2; s2 is also the symbol sign of
// the pairing.
struct NullPairNorms {
  Real null_norm = 0.0;
  Real plain_norm = 0.0;
};
NullPairNorms nullpair_band_norm(const ScanConfig& cfg, const SpinorField& u0,
                                 const SpinorField& v0, int j, WaveSign s2, Real mu);

// Mixed-norm growth of a single free wave across dyadic bands up to
// lambda_max: ||e^{-it<D>_m} f_lambda||_{L^q_t L^r_x} on the window, fitted
// over lambda in {2, 4, ..., lambda_max} (a single cell when lambda_max == 1).
// Requires 1/q + 1/r == 1/2 with 2 <= r < infinity.
StrichartzScanResult strichartz_scan(const ScanConfig& cfg, Real lambda_max, Real q, Real r);

// ||P_mu(S f_l1 . S g_l2)|| for scalar random band data; rejects dyadic
// triples whose output band cannot meet the reachable product band.
ScalingScanResult bilinear_scan(const ScanConfig& cfg, Interaction ia, Real mu,
                                Real lambda1, Real lambda2);

// Null-form analog for piece Q_j (j in 1..3) on projected half-wave spinor
// data; also records the plain beta-pairing norms of the identical inputs,
// whose ratio to the null norms exhibits the angular gain.
ScalingScanResult nullform_scan(const ScanConfig& cfg, int j, Interaction ia, Real mu,
                                Real lambda1, Real lambda2);

// CSV report: one row per (scan, cell, trial) with measured norm, predicted
// bound, and their ratio.
std::string scan_report_csv(const std::vector<ScalingScanResult>& results);

// Weighted dyadic convolution-sum ratio
//   S / prod_j ||lambda^s c_j||^2_{l^2},
//   S = sum_{l4} [ sum_{l1,l2,l3 admissible} l4^s lmed^delta c1 c2 c3 ]^2,
// where lmed is the median of (l1,l2,l3) and a quadruple is admissible when
// every scale is at most 3 times the max of the other three.  c_j[k] is the
// coefficient at lambda = 2^k.  Returns 0 when any sequence vanishes.
Real dyadic_sum_ratio(Real s, Real delta, const std::vector<Real>& c1,
                      const std::vector<Real>& c2, const std::vector<Real>& c3);

// Max of dyadic_sum_ratio over random nonnegative sequences of the given
// support length (|normal| entries, seeded reproducibly).
Real dyadic_sum_max_ratio(Real s, Real delta, int support_len, int trials,
                          std::uint64_t seed);

}  // namespace dirac
