#pragma once

// Dyadic frequency localization P_lambda = F^{-1} rho_lambda(|xi|) F.

#include <vector>

#include "dirac/cutoffs.hpp"
#include "dirac/field.hpp"

namespace dirac {

// Applies rho_lambda(|xi|); input must be spectral, lambda dyadic.
ScalarField lp_project(const ScalarField& f, Real lambda);
SpinorField lp_project(const SpinorField& f, Real lambda);

// Scales {1, 2, ..., 2^K} with 2^K >= max |xi| on the lattice, so the pieces
// telescope back to the identity on every representable frequency.
std::vector<Real> lp_scales(const Grid& grid);

}  // namespace dirac
