#pragma once

// Smooth dyadic cutoffs.  chi is the concrete C^inf bump
//   chi(s) = eta(2-|s|) / (eta(2-|s|) + eta(|s|-1)),  eta(t) = exp(-1/t) (t>0), else 0,
// which is identically 1 on [-1,1] and supported in (-2,2).  The dyadic pieces
//   rho_1 = chi,  rho_lambda(s) = chi(s/lambda) - chi(2s/lambda)   (lambda = 2,4,...)
// telescope: sum_{lambda<=2^K} rho_lambda(s) = chi(s/2^K) = 1 for |s| <= 2^K.
// sigma_lambda is the same difference for arbitrary dyadic lambda (also < 1),
// used for modulation localization.

#include <cmath>

#include "dirac/types.hpp"

namespace dirac {

template <typename S = Real>
S bump_eta(S t) {
  return t > S(0) ? std::exp(S(-1) / t) : S(0);
}

template <typename S = Real>
S chi(S s) {
  const S a = bump_eta(S(2) - std::abs(s));
  const S b = bump_eta(std::abs(s) - S(1));
  return a == S(0) ? S(0) : a / (a + b);
}

// true iff lambda == 2^k for some (possibly negative) integer k
inline bool is_dyadic(Real lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) return false;
  int exp2 = 0;
  const Real mant = std::frexp(lambda, &exp2);
  return mant == 0.5;
}

template <typename S = Real>
S sigma_lambda(S s, S lambda) {
  return chi<S>(s / lambda) - chi<S>(S(2) * s / lambda);
}

// Spatial Littlewood-Paley weight.  lambda must be dyadic; scales below 1
// give the zero multiplier, lambda == 1 the full low-frequency bump.
template <typename S = Real>
S rho_lambda(S s, S lambda) {
  if (!is_dyadic(static_cast<Real>(lambda)))
    throw ContractError("rho_lambda: scale must be a dyadic 2^k");
  if (lambda < S(1)) return S(0);
  if (lambda == S(1)) return chi<S>(s);
  return sigma_lambda<S>(s, lambda);
}

}  // namespace dirac
