#pragma once

// Seeded random data.  All randomness in the project flows through Rng
// (xorshift-free mt19937_64 + explicit Box-Muller) so runs are reproducible
// bit-for-bit for a fixed seed regardless of standard-library details.

#include <cstdint>
#include <random>

#include "dirac/field.hpp"

namespace dirac {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  Real uniform() {  // in [0, 1)
    return static_cast<Real>(gen_() >> 11) * 0x1.0p-53;
  }
  Real normal() {
    if (have_spare_) { have_spare_ = false; return spare_; }
    Real u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const Real r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }
  Complex cnormal() { return Complex(normal(), normal()); }
  std::uint64_t raw() { return gen_(); }

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  Real spare_ = 0;
};

// splitmix64-style mixing for independent per-trial streams
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// i.i.d. complex Gaussian Fourier coefficients on every bin (spectral repr).
ScalarField random_scalar(GridPtr grid, Rng& rng);
SpinorField random_spinor(GridPtr grid, Rng& rng);

// Band-limited sample: Gaussian coefficients shaped by rho_lambda(|xi|),
// then L^2-normalized.  This is exactly "P_lambda of white data, unit norm".
ScalarField random_scalar_band(GridPtr grid, Real lambda, Rng& rng);
SpinorField random_spinor_band(GridPtr grid, Real lambda, Rng& rng);

void drop_zero_mode(ScalarField& f);
void drop_zero_mode(SpinorField& f);

void normalize_l2(ScalarField& f);
void normalize_l2(SpinorField& f);

}  // namespace dirac
