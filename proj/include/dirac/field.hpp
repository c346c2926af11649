#pragma once

// Scalar and 4-spinor lattice fields with an explicit representation tag.
// Operations that require one representation throw ContractError on the
// other rather than converting silently; to_spectral/to_physical convert.

#include <array>
#include <cmath>

#include <Eigen/Core>

#include "dirac/grid.hpp"
#include "dirac/spinor_algebra.hpp"
#include "dirac/types.hpp"

namespace dirac {

enum class Repr { Physical, Spectral };

struct ScalarField {
  GridPtr grid;
  Repr repr = Repr::Physical;
  Eigen::VectorXcd data;

  static ScalarField zero(GridPtr g, Repr r) {
    return {g, r, Eigen::VectorXcd::Zero(g->size())};
  }
};

struct SpinorField {
  GridPtr grid;
  Repr repr = Repr::Physical;
  std::array<Eigen::VectorXcd, 4> comp;

  static SpinorField zero(GridPtr g, Repr r) {
    SpinorField f{g, r, {}};
    for (auto& c : f.comp) c = Eigen::VectorXcd::Zero(g->size());
    return f;
  }

  Spinord at(Index idx) const {
    return Spinord(comp[0][idx], comp[1][idx], comp[2][idx], comp[3][idx]);
  }
  void set(Index idx, const Spinord& s) {
    for (int c = 0; c < 4; ++c) comp[c][idx] = s[c];
  }
};

void transform_to(ScalarField& f, Repr target);
void transform_to(SpinorField& f, Repr target);

ScalarField to_spectral(ScalarField f);
ScalarField to_physical(ScalarField f);
SpinorField to_spectral(SpinorField f);
SpinorField to_physical(SpinorField f);

inline void require_repr(const ScalarField& f, Repr r, const char* who) {
  if (f.repr != r) throw ContractError(std::string(who) + ": field is in the wrong representation");
}
inline void require_repr(const SpinorField& f, Repr r, const char* who) {
  if (f.repr != r) throw ContractError(std::string(who) + ": field is in the wrong representation");
}

// Plancherel-consistent L^2 norms; valid in either representation.
Real l2_norm(const ScalarField& f);
Real l2_norm(const SpinorField& f);

// Inhomogeneous Sobolev norm || <xi>^s u^ ||_{L^2}; converts a copy to the
// spectral side if needed.
Real sobolev_norm(const ScalarField& f, Real s);
Real sobolev_norm(const SpinorField& f, Real s);

// L^2 distance without forming intermediate copies of both fields.
Real l2_distance(const SpinorField& a, const SpinorField& b);
Real sobolev_distance(const SpinorField& a, const SpinorField& b, Real s);

// Pointwise density <beta psi, phi> (physical representation), a complex
// scalar field; real-valued when phi == psi.
ScalarField density_beta(const SpinorField& psi, const SpinorField& phi);

bool all_finite(const SpinorField& f);

// Zero padding between a grid and its double on the same box (spectral
// representation only; signed frequency bins are preserved).  Padding before
// a pointwise product removes aliasing for band-limited factors; cropping is
// its left inverse.
ScalarField pad_spectrum(const ScalarField& f, GridPtr fine);
SpinorField pad_spectrum(const SpinorField& f, GridPtr fine);
ScalarField crop_spectrum(const ScalarField& f, GridPtr coarse);
SpinorField crop_spectrum(const SpinorField& f, GridPtr coarse);

}  // namespace dirac
