#include "dirac/grid.hpp"

namespace dirac {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int n, Real box) : n_(n), box_(box), freqs_(n) {
  const Real dxi = 2.0 * kPi / box_;
  for (int k = 0; k < n_; ++k) {
    const int signed_k = (k < n_ / 2) ? k : k - n_;
    freqs_[k] = dxi * signed_k;
  }
}

GridPtr Grid::make(int n, Real box) {
  if (!power_of_two(n) || n < 4)
    throw ContractError("Grid: n must be a power of two >= 4");
  if (!(box > 0) || !std::isfinite(box))
    throw ContractError("Grid: box length must be positive and finite");
  return GridPtr(new Grid(n, box));
}

GridPtr make_grid(int n, Real box) { return Grid::make(n, box); }

}  // namespace dirac
