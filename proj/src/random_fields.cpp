#include "dirac/random_fields.hpp"

#include "dirac/littlewood_paley.hpp"

namespace dirac {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ScalarField random_scalar(GridPtr grid, Rng& rng) {
  ScalarField f = ScalarField::zero(grid, Repr::Spectral);
  for (Index i = 0; i < f.data.size(); ++i) f.data[i] = rng.cnormal();
  return f;
}

SpinorField random_spinor(GridPtr grid, Rng& rng) {
  SpinorField f = SpinorField::zero(grid, Repr::Spectral);
  for (auto& c : f.comp)
    for (Index i = 0; i < c.size(); ++i) c[i] = rng.cnormal();
  return f;
}

ScalarField random_scalar_band(GridPtr grid, Real lambda, Rng& rng) {
  ScalarField f = lp_project(random_scalar(grid, rng), lambda);
  normalize_l2(f);
  return f;
}

SpinorField random_spinor_band(GridPtr grid, Real lambda, Rng& rng) {
  SpinorField f = lp_project(random_spinor(grid, rng), lambda);
  normalize_l2(f);
  return f;
}

void drop_zero_mode(ScalarField& f) {
  require_repr(f, Repr::Spectral, "drop_zero_mode");
  f.data[0] = Complex(0, 0);
}

void drop_zero_mode(SpinorField& f) {
  require_repr(f, Repr::Spectral, "drop_zero_mode");
  for (auto& c : f.comp) c[0] = Complex(0, 0);
}

void normalize_l2(ScalarField& f) {
  const Real nrm = l2_norm(f);
  if (nrm == 0) throw ContractError("normalize_l2: zero field");
  f.data /= nrm;
}

void normalize_l2(SpinorField& f) {
  const Real nrm = l2_norm(f);
  if (nrm == 0) throw ContractError("normalize_l2: zero field");
  for (auto& c : f.comp) c /= nrm;
}

}  // namespace dirac
