#include "dirac/field.hpp"

#include "dirac/fft3.hpp"

namespace dirac {

void transform_to(ScalarField& f, Repr target) {
  if (f.repr == target) return;
  Fft3& fft = fft3_for(f.grid->n());
  if (target == Repr::Spectral)
    fft.forward(f.data);
  else
    fft.inverse(f.data);
  f.repr = target;
}

void transform_to(SpinorField& f, Repr target) {
  if (f.repr == target) return;
  Fft3& fft = fft3_for(f.grid->n());
  for (auto& c : f.comp) {
    if (target == Repr::Spectral)
      fft.forward(c);
    else
      fft.inverse(c);
  }
  f.repr = target;
}

ScalarField to_spectral(ScalarField f) { transform_to(f, Repr::Spectral); return f; }
ScalarField to_physical(ScalarField f) { transform_to(f, Repr::Physical); return f; }
SpinorField to_spectral(SpinorField f) { transform_to(f, Repr::Spectral); return f; }
SpinorField to_physical(SpinorField f) { transform_to(f, Repr::Physical); return f; }

namespace {
// Shared Plancherel weights: h^3 on the physical side, L^3 on the dual side.
Real measure_weight(const Grid& g, Repr r) {
  return r == Repr::Physical ? g.cell_volume() : g.box_volume();
}
}  // namespace

Real l2_norm(const ScalarField& f) {
  return std::sqrt(measure_weight(*f.grid, f.repr) * f.data.squaredNorm());
}

Real l2_norm(const SpinorField& f) {
  Real s2 = 0;
  for (const auto& c : f.comp) s2 += c.squaredNorm();
  return std::sqrt(measure_weight(*f.grid, f.repr) * s2);
}

namespace {
Eigen::VectorXd bracket_sq(const Grid& g) {
  // <xi>_1^2 = 1 + |xi|^2 per lattice site
  Eigen::VectorXd w(g.size());
  const int n = g.n();
  Index idx = 0;
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy) {
      const Real yz = g.freq1d(iy) * g.freq1d(iy) + g.freq1d(iz) * g.freq1d(iz);
      for (int ix = 0; ix < n; ++ix, ++idx)
        w[idx] = 1.0 + g.freq1d(ix) * g.freq1d(ix) + yz;
    }
  return w;
}
}  // namespace

Real sobolev_norm(const ScalarField& f, Real s) {
  const ScalarField* spec = &f;
  ScalarField tmp;
  if (f.repr != Repr::Spectral) { tmp = to_spectral(f); spec = &tmp; }
  const Eigen::VectorXd w = bracket_sq(*spec->grid);
  Real acc = 0;
  for (Index i = 0; i < w.size(); ++i)
    acc += std::pow(w[i], s) * std::norm(spec->data[i]);
  return std::sqrt(spec->grid->box_volume() * acc);
}

Real sobolev_norm(const SpinorField& f, Real s) {
  const SpinorField* spec = &f;
  SpinorField tmp;
  if (f.repr != Repr::Spectral) { tmp = to_spectral(f); spec = &tmp; }
  const Eigen::VectorXd w = bracket_sq(*spec->grid);
  Real acc = 0;
  for (Index i = 0; i < w.size(); ++i) {
    const Real ws = std::pow(w[i], s);
    for (int c = 0; c < 4; ++c) acc += ws * std::norm(spec->comp[c][i]);
  }
  return std::sqrt(spec->grid->box_volume() * acc);
}

Real l2_distance(const SpinorField& a, const SpinorField& b) {
  if (!a.grid->same_layout(*b.grid) || a.repr != b.repr)
    throw ContractError("l2_distance: incompatible fields");
  Real s2 = 0;
  for (int c = 0; c < 4; ++c) s2 += (a.comp[c] - b.comp[c]).squaredNorm();
  return std::sqrt(measure_weight(*a.grid, a.repr) * s2);
}

Real sobolev_distance(const SpinorField& a, const SpinorField& b, Real s) {
  if (!a.grid->same_layout(*b.grid) || a.repr != b.repr)
    throw ContractError("sobolev_distance: incompatible fields");
  if (a.repr != Repr::Spectral)
    return sobolev_distance(to_spectral(a), to_spectral(b), s);
  const Eigen::VectorXd w = bracket_sq(*a.grid);
  Real acc = 0;
  for (Index i = 0; i < w.size(); ++i) {
    const Real ws = std::pow(w[i], s);
    for (int c = 0; c < 4; ++c) acc += ws * std::norm(a.comp[c][i] - b.comp[c][i]);
  }
  return std::sqrt(a.grid->box_volume() * acc);
}

ScalarField density_beta(const SpinorField& psi, const SpinorField& phi) {
  require_repr(psi, Repr::Physical, "density_beta");
  require_repr(phi, Repr::Physical, "density_beta");
  if (!psi.grid->same_layout(*phi.grid))
    throw ContractError("density_beta: grids differ");
  ScalarField out = ScalarField::zero(psi.grid, Repr::Physical);
  // <beta psi, phi> = conj(phi)^T beta psi with beta = diag(1,1,-1,-1)
  out.data = phi.comp[0].conjugate().cwiseProduct(psi.comp[0]) +
             phi.comp[1].conjugate().cwiseProduct(psi.comp[1]) -
             phi.comp[2].conjugate().cwiseProduct(psi.comp[2]) -
             phi.comp[3].conjugate().cwiseProduct(psi.comp[3]);
  return out;
}

bool all_finite(const SpinorField& f) {
  for (const auto& c : f.comp)
    for (Index i = 0; i < c.size(); ++i)
      if (!std::isfinite(c[i].real()) || !std::isfinite(c[i].imag())) return false;
  return true;
}

namespace {

// Copies spectral data between grids sharing a box, keyed by signed bins.
// Every bin of the smaller grid is transferred; `small_to_big` selects the
// direction (big -> small discards the frequencies the small grid lacks).
void transfer_bins(const Eigen::VectorXcd& src, const Grid& src_grid, Eigen::VectorXcd& dst,
                   const Grid& dst_grid, bool small_to_big) {
  const Grid& small = small_to_big ? src_grid : dst_grid;
  const int half = small.n() / 2;
  const auto raw = [](const Grid& g, int k) { return k >= 0 ? k : k + g.n(); };
  for (int kz = -half; kz < half; ++kz) {
    for (int ky = -half; ky < half; ++ky) {
      for (int kx = -half; kx < half; ++kx) {
        const Index s = src_grid.index(raw(src_grid, kx), raw(src_grid, ky), raw(src_grid, kz));
        const Index d = dst_grid.index(raw(dst_grid, kx), raw(dst_grid, ky), raw(dst_grid, kz));
        dst[d] = src[s];
      }
    }
  }
}

GridPtr check_resample(const Grid& from, GridPtr to, bool padding, const char* who) {
  const int expect = padding ? 2 * from.n() : from.n() / 2;
  if (!to || to->n() != expect || to->box() != from.box())
    throw ContractError(std::string(who) + ": target grid must share the box and " +
                        (padding ? "double" : "halve") + " the resolution");
  return to;
}

}  // namespace

ScalarField pad_spectrum(const ScalarField& f, GridPtr fine) {
  require_repr(f, Repr::Spectral, "pad_spectrum");
  check_resample(*f.grid, fine, true, "pad_spectrum");
  ScalarField out = ScalarField::zero(fine, Repr::Spectral);
  transfer_bins(f.data, *f.grid, out.data, *fine, true);
  return out;
}

SpinorField pad_spectrum(const SpinorField& f, GridPtr fine) {
  require_repr(f, Repr::Spectral, "pad_spectrum");
  check_resample(*f.grid, fine, true, "pad_spectrum");
  SpinorField out = SpinorField::zero(fine, Repr::Spectral);
  for (int c = 0; c < 4; ++c) transfer_bins(f.comp[c], *f.grid, out.comp[c], *fine, true);
  return out;
}

ScalarField crop_spectrum(const ScalarField& f, GridPtr coarse) {
  require_repr(f, Repr::Spectral, "crop_spectrum");
  check_resample(*f.grid, coarse, false, "crop_spectrum");
  ScalarField out = ScalarField::zero(coarse, Repr::Spectral);
  transfer_bins(f.data, *f.grid, out.data, *coarse, false);
  return out;
}

SpinorField crop_spectrum(const SpinorField& f, GridPtr coarse) {
  require_repr(f, Repr::Spectral, "crop_spectrum");
  check_resample(*f.grid, coarse, false, "crop_spectrum");
  SpinorField out = SpinorField::zero(coarse, Repr::Spectral);
  for (int c = 0; c < 4; ++c) transfer_bins(f.comp[c], *f.grid, out.comp[c], *coarse, false);
  return out;
}

}  // namespace dirac
