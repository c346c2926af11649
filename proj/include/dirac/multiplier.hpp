#pragma once

// Fourier multipliers on spectral fields.  A MultiplierSpec bundles the
// symbol with a human-readable description (it ends up in run manifests).

#include <functional>
#include <string>

#include "dirac/field.hpp"

namespace dirac {

struct MultiplierSpec {
  std::string description;
  // scalar symbol: xi -> complex.  Exactly one of scalar/matrix is set.
  std::function<Complex(const Vec3&)> scalar;
  // matrix symbol: xi -> 4x4, applied pointwise to spinor fields.
  std::function<Matrix4d(const Vec3&)> matrix;
};

MultiplierSpec scalar_multiplier(std::string description, std::function<Complex(const Vec3&)> symbol);
MultiplierSpec matrix_multiplier(std::string description, std::function<Matrix4d(const Vec3&)> symbol);

ScalarField apply_multiplier(const ScalarField& f, const MultiplierSpec& spec);
SpinorField apply_multiplier(const SpinorField& f, const MultiplierSpec& spec);

// <xi>_m = sqrt(m^2 + |xi|^2) tabulated over the lattice (FFT bin order).
Eigen::VectorXd bracket_weight(const Grid& grid, Real m);

// Rotation-invariant |xi| table.
Eigen::VectorXd abs_freq(const Grid& grid);

// Convolution against the screened Coulomb kernel: multiplier
// c / (1 + |xi|^2) with c = 4*pi for the physical normalization (the L^1
// mass of exp(-|x|)/|x| is 4*pi, attained at xi = 0).
ScalarField yukawa_convolve(const ScalarField& density, Real normalization = 4.0 * kPi);

}  // namespace dirac
