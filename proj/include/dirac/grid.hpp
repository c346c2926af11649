#pragma once

// Periodic box [0, L)^3 sampled on an n^3 lattice (n a power of two).
// Dual lattice frequencies are xi = (2*pi/L) * k with k in [-n/2, n/2) per
// axis, stored in FFT bin order (0, 1, ..., n/2-1, -n/2, ..., -1).
//
// Spectral data holds Fourier *coefficients* c(xi) with
//   u(x) = sum_xi c(xi) exp(i xi . x),
// so Plancherel reads  sum_x |u|^2 h^3 = L^3 sum_xi |c|^2; both sides are
// computed by the shared norm routines in field.hpp.

#include <memory>

#include <Eigen/Core>

#include "dirac/types.hpp"

namespace dirac {

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

class Grid {
public:
  static GridPtr make(int n, Real box);

  int n() const { return n_; }
  Real box() const { return box_; }
  Index size() const { return static_cast<Index>(n_) * n_ * n_; }
  Real spacing() const { return box_ / n_; }
  Real cell_volume() const { const Real h = spacing(); return h * h * h; }
  Real box_volume() const { return box_ * box_ * box_; }
  // largest |xi| representable on any single axis
  Real nyquist() const { return (2.0 * kPi / box_) * (n_ / 2); }

  Real freq1d(int bin) const { return freqs_[bin]; }
  const Eigen::VectorXd& freqs() const { return freqs_; }

  Index index(int ix, int iy, int iz) const {
    return ix + static_cast<Index>(n_) * (iy + static_cast<Index>(n_) * iz);
  }
  Vec3 freq(int ix, int iy, int iz) const {
    return Vec3(freqs_[ix], freqs_[iy], freqs_[iz]);
  }
  Vec3 freq(Index idx) const {
    const int ix = static_cast<int>(idx % n_);
    const int iy = static_cast<int>((idx / n_) % n_);
    const int iz = static_cast<int>(idx / (static_cast<Index>(n_) * n_));
    return freq(ix, iy, iz);
  }

  bool same_layout(const Grid& other) const { return n_ == other.n_ && box_ == other.box_; }

private:
  Grid(int n, Real box);
  int n_;
  Real box_;
  Eigen::VectorXd freqs_;
};

GridPtr make_grid(int n, Real box);

}  // namespace dirac
