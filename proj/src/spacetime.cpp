#include "dirac/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/FFT>

#include "dirac/cutoffs.hpp"
#include "dirac/multiplier.hpp"

namespace dirac {

namespace {

void require_valid(const SpacetimeField& u) {
  if (!u.grid) throw ContractError("spacetime field has no grid");
  if (!(u.window > 0)) throw ContractError("spacetime field needs a positive window");
  const Index nt = u.nt();
  if (nt < 4 || (nt & (nt - 1)) != 0)
    throw ContractError("spacetime field needs a power-of-two slice count >= 4");
  for (const auto& s : u.slices) {
    if (s.grid.get() != u.grid.get())
      throw ContractError("spacetime slices must share the field's grid");
  }
}

SpacetimeField time_transform(const SpacetimeField& u, bool forward) {
  require_valid(u);
  const Index nt = u.nt();
  SpacetimeField out = u;
  out.trepr = forward ? TimeRepr::Spectral : TimeRepr::Physical;

  Eigen::FFT<Real> fft;
  fft.SetFlag(Eigen::FFT<Real>::Unscaled);
  Eigen::VectorXcd line(nt), image(nt);
  const Real scale = forward ? 1.0 / static_cast<Real>(nt) : 1.0;
  for (int c = 0; c < 4; ++c) {
    for (Index i = 0; i < u.grid->size(); ++i) {
      for (Index j = 0; j < nt; ++j) line[j] = u.slices[j].comp[c][i];
      if (forward) {
        fft.fwd(image, line);
      } else {
        fft.inv(image, line);
      }
      for (Index j = 0; j < nt; ++j) out.slices[j].comp[c][i] = scale * image[j];
    }
  }
  return out;
}

}  // namespace

Real SpacetimeField::tau(Index k) const {
  const Index n = nt();
  const Index signed_bin = k < n / 2 ? k : k - n;
  return dtau() * static_cast<Real>(signed_bin);
}

SpacetimeField free_wave_history(const SpinorField& f0, WaveSign sign, Real m, Real window,
                                 Index nt) {
  if (!(window > 0)) throw ContractError("free_wave_history: window must be positive");
  if (nt < 4 || (nt & (nt - 1)) != 0)
    throw ContractError("free_wave_history: nt must be a power of two >= 4");
  SpacetimeField u;
  u.grid = f0.grid;
  u.window = window;
  u.trepr = TimeRepr::Physical;
  u.slices.reserve(static_cast<std::size_t>(nt));
  const SpinorField f0s = to_spectral(f0);
  const Real dt = window / static_cast<Real>(nt);
  for (Index j = 0; j < nt; ++j) {
    u.slices.push_back(free_propagate(f0s, m, sign, dt * static_cast<Real>(j)));
  }
  return u;
}

SpacetimeField time_forward(const SpacetimeField& u) {
  if (u.trepr != TimeRepr::Physical)
    throw ContractError("time_forward expects a time-physical field");
  return time_transform(u, true);
}

SpacetimeField time_inverse(const SpacetimeField& u) {
  if (u.trepr != TimeRepr::Spectral)
    throw ContractError("time_inverse expects a time-spectral field");
  return time_transform(u, false);
}

SpacetimeField modulation_project(const SpacetimeField& u, WaveSign sign, Real lambda, Real m,
                                  ModBand band) {
  require_valid(u);
  if (!is_dyadic(lambda)) throw ContractError("modulation_project: scale must be dyadic");
  for (const auto& s : u.slices) require_repr(s, Repr::Spectral, "modulation_project");

  const bool was_physical = u.trepr == TimeRepr::Physical;
  SpacetimeField spec = was_physical ? time_forward(u) : u;
  const Eigen::VectorXd bracket = bracket_weight(*u.grid, m);
  const Real s = static_cast<Real>(sign_of(sign));

  for (Index k = 0; k < spec.nt(); ++k) {
    const Real tau = spec.tau(k);
    auto& slice = spec.slices[k];
    for (Index i = 0; i < u.grid->size(); ++i) {
      const Real d = std::abs(tau + s * bracket[i]);
      Real w = 0;
      switch (band) {
        case ModBand::At: w = rho_lambda(d, lambda); break;
        case ModBand::Less: w = chi(2 * d / lambda); break;
        case ModBand::Geq: w = 1.0 - chi(2 * d / lambda); break;
      }
      for (int c = 0; c < 4; ++c) slice.comp[c][i] *= w;
    }
  }
  return was_physical ? time_inverse(spec) : spec;
}

Real st_l2_norm(const SpacetimeField& u) {
  require_valid(u);
  Real acc = 0;
  for (const auto& s : u.slices) {
    const Real nrm = l2_norm(s);
    acc += nrm * nrm;
  }
  const Real weight = u.trepr == TimeRepr::Physical ? u.dt() : u.window;
  return std::sqrt(acc * weight);
}

Real mixed_norm(const SpacetimeField& u, Real q, Real r) {
  require_valid(u);
  if (u.trepr != TimeRepr::Physical)
    throw ContractError("mixed_norm expects a time-physical field");
  if (!(q >= 1) || !(r >= 1)) throw ContractError("mixed_norm: exponents must be >= 1");
  const bool q_inf = std::isinf(q), r_inf = std::isinf(r);
  const Real vol = u.grid->cell_volume();

  Real acc = 0, sup = 0;
  for (const auto& slice : u.slices) {
    const SpinorField phys = to_physical(slice);
    Real space = 0, space_sup = 0;
    for (Index i = 0; i < u.grid->size(); ++i) {
      Real mag2 = 0;
      for (int c = 0; c < 4; ++c) mag2 += std::norm(phys.comp[c][i]);
      const Real mag = std::sqrt(mag2);
      if (r_inf) {
        space_sup = std::max(space_sup, mag);
      } else {
        space += std::pow(mag, r);
      }
    }
    const Real lr = r_inf ? space_sup : std::pow(space * vol, 1.0 / r);
    if (q_inf) {
      sup = std::max(sup, lr);
    } else {
      acc += std::pow(lr, q);
    }
  }
  return q_inf ? sup : std::pow(acc * u.dt(), 1.0 / q);
}

}  // namespace dirac
