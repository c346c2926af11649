#include "dirac/scans.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "dirac/cutoffs.hpp"
#include "dirac/nullform.hpp"
#include "dirac/projections.hpp"
#include "dirac/threading.hpp"

namespace dirac {

namespace {

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

// Sparse rho_mu^2 weights over the nonzero part of the output band.
struct BandWeights {
  std::vector<Index> idx;
  std::vector<Real> w2;
};

BandWeights band_weights(const Grid& g, Real mu) {
  BandWeights bw;
  for (Index i = 0; i < g.size(); ++i) {
    const Real rho = rho_lambda(g.freq(i).norm(), mu);
    if (rho == 0.0) continue;
    bw.idx.push_back(i);
    bw.w2.push_back(rho * rho);
  }
  return bw;
}

Real weighted_l2_sq(const ScalarField& w, const BandWeights& bw) {
  Real s = 0.0;
  for (std::size_t k = 0; k < bw.idx.size(); ++k) s += bw.w2[k] * std::norm(w.data(bw.idx[k], 0));
  return s;
}

void validate_config(const ScanConfig& cfg) {
  if (cfg.n < 4 || cfg.box <= 0.0 || cfg.m < 0.0)
    throw ContractError("scan: bad grid parameters");
  if (cfg.window <= 0.0 || cfg.nt < 1) throw ContractError("scan: bad time window");
  if (cfg.trials < 1) throw ContractError("scan: need at least one trial");
}

void require_scale(Real v, const char* who) {
  if (!(v >= 1.0) || !is_dyadic(v)) throw ContractError(std::string(who) + ": scale must be a dyadic >= 1");
}

// Reject triples whose output band cannot meet the reachable product band
// (the discrete face of "mu << lambda1 ~ lambda2  or  mu ~ lambda1 v lambda2"),
// and bands the coarse grid cannot hold.
void validate_cell(const ScanConfig& cfg, Real mu, Real lambda1, Real lambda2) {
  require_scale(mu, "scan mu");
  require_scale(lambda1, "scan lambda1");
  require_scale(lambda2, "scan lambda2");
  const Real nyq = (2.0 * kPi / cfg.box) * (cfg.n / 2);
  if (2.0 * std::max(lambda1, lambda2) > nyq)
    throw ContractError("scan: input band exceeds the grid Nyquist frequency");
  const Real lmin = std::min(lambda1, lambda2), lmax = std::max(lambda1, lambda2);
  const Real reach_lo = std::max(0.0, lmax / 2.0 - 2.0 * lmin);
  const Real reach_hi = 2.0 * (lambda1 + lambda2);
  const Real band_lo = mu == 1.0 ? 0.0 : mu / 2.0;
  const Real band_hi = 2.0 * mu;
  if (band_hi <= reach_lo || band_lo >= reach_hi)
    throw ContractError("scan: output scale incompatible with the input scales (empty band)");
}

std::uint64_t cell_seed(const ScanConfig& cfg, std::uint64_t kind, Real mu, Real l1, Real l2) {
  std::uint64_t s = derive_seed(cfg.seed, kind);
  s = derive_seed(s, static_cast<std::uint64_t>(mu));
  s = derive_seed(s, static_cast<std::uint64_t>(l1));
  return derive_seed(s, static_cast<std::uint64_t>(l2));
}

Real mean_of(const std::vector<Real>& v) {
  Real s = 0.0;
  for (Real x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<Real>(v.size());
}

// Common-scale family max(2, 2 mu) .. lambda1, doubling; just {lambda1} when
// the designated scale is already at the bottom.
std::vector<Real> scale_family(Real mu, Real lambda1) {
  std::vector<Real> ells;
  for (Real ell = std::max(2.0, 2.0 * mu); ell <= lambda1; ell *= 2.0) ells.push_back(ell);
  if (ells.empty() || ells.back() != lambda1) ells.push_back(lambda1);
  return ells;
}

NullPiece q_piece(int j) {
  switch (j) {
    case 1: return NullPiece::Q1;
    case 2: return NullPiece::Q2;
    case 3: return NullPiece::Q3;
    default: throw ContractError("nullform_scan: piece index must be 1, 2 or 3");
  }
}

void finish_fit(ScalingScanResult& r) {
  r.measured_norm = r.cells.back().mean;
  r.predicted_bound = r.cells.back().predicted;
  if (r.cells.size() >= 3) {
    std::vector<Real> ells, means, preds;
    for (const ScanCell& c : r.cells) {
      ells.push_back(c.lambda1);
      means.push_back(c.mean);
      preds.push_back(c.predicted);
    }
    r.fitted_exponent = fitted_exponent(ells, means);
    r.predicted_exponent = fitted_exponent(ells, preds);
  } else {
    r.fitted_exponent = kNaN;
    r.predicted_exponent = kNaN;
  }
}

}  // namespace

Real predicted_bilinear_bound(Interaction ia, Real mu, Real lambda1, Real lambda2) {
  const Real lmin = std::min(lambda1, lambda2), lmax = std::max(lambda1, lambda2);
  if (lmax > 2.0 * lmin) return lmin;  // separated scales
  if (ia == Interaction::PlusPlus) return mu;
  return std::sqrt(mu * lambda1);
}

Real predicted_nullform_bound(Interaction ia, Real mu, Real lambda1, Real lambda2) {
  const Real lmin = std::min(lambda1, lambda2), lmax = std::max(lambda1, lambda2);
  if (lmax > 2.0 * lmin) return lmin;
  if (ia == Interaction::PlusPlus) return mu * std::sqrt(mu / lambda1);
  return mu;
}

Real fitted_exponent(const std::vector<Real>& xs, const std::vector<Real>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw ContractError("fitted_exponent: need matching lists of at least 2 points");
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  const Real n = static_cast<Real>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw ContractError("fitted_exponent: points must be positive");
    const Real lx = std::log2(xs[i]), ly = std::log2(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Real product_band_norm(const ScanConfig& cfg, const ScalarField& f, WaveSign s1,
                       const ScalarField& g, WaveSign s2, Real mu) {
  validate_config(cfg);
  require_repr(f, Repr::Spectral, "product_band_norm");
  require_repr(g, Repr::Spectral, "product_band_norm");
  GridPtr coarse = make_grid(cfg.n, cfg.box);
  if (!f.grid->same_layout(*coarse) || !g.grid->same_layout(*coarse))
    throw ContractError("product_band_norm: fields do not live on the configured grid");
  GridPtr fine = make_grid(2 * cfg.n, cfg.box);
  const BandWeights bw = band_weights(*fine, mu);
  const Real dt = cfg.window / cfg.nt;
  Real acc = 0.0;
  for (int j = 0; j < cfg.nt; ++j) {
    const Real t = dt * j;
    ScalarField u = to_physical(pad_spectrum(free_propagate(f, cfg.m, s1, t), fine));
    ScalarField v = to_physical(pad_spectrum(free_propagate(g, cfg.m, s2, t), fine));
    u.data.col(0).array() *= v.data.col(0).array();
    acc += weighted_l2_sq(to_spectral(std::move(u)), bw);
  }
  return std::sqrt(dt * fine->box_volume() * acc);
}

NullPairNorms nullpair_band_norm(const ScanConfig& cfg, const SpinorField& u0,
                                 const SpinorField& v0, int j, WaveSign s2, Real mu) {
  validate_config(cfg);
  require_repr(u0, Repr::Spectral, "nullpair_band_norm");
  require_repr(v0, Repr::Spectral, "nullpair_band_norm");
  const NullPiece piece = q_piece(j);
  GridPtr coarse = make_grid(cfg.n, cfg.box);
  if (!u0.grid->same_layout(*coarse) || !v0.grid->same_layout(*coarse))
    throw ContractError("nullpair_band_norm: fields do not live on the configured grid");
  GridPtr fine = make_grid(2 * cfg.n, cfg.box);
  const BandWeights bw = band_weights(*fine, mu);
  const Real dt = cfg.window / cfg.nt;
  Real acc_null = 0.0, acc_plain = 0.0;
  for (int k = 0; k < cfg.nt; ++k) {
    const Real t = dt * k;
    SpinorField us = pad_spectrum(free_propagate(u0, cfg.m, WaveSign::Plus, t), fine);
    SpinorField vs = pad_spectrum(free_propagate(v0, cfg.m, s2, t), fine);
    acc_null += weighted_l2_sq(to_spectral(nullform_physical(us, vs, piece, s2, cfg.m)), bw);
    ScalarField plain = density_beta(to_physical(std::move(us)), to_physical(std::move(vs)));
    acc_plain += weighted_l2_sq(to_spectral(std::move(plain)), bw);
  }
  NullPairNorms out;
  out.null_norm = std::sqrt(dt * fine->box_volume() * acc_null);
  out.plain_norm = std::sqrt(dt * fine->box_volume() * acc_plain);
  return out;
}

StrichartzScanResult strichartz_scan(const ScanConfig& cfg, Real lambda_max, Real q, Real r) {
  validate_config(cfg);
  require_scale(lambda_max, "strichartz lambda");
  if (!(r >= 2.0) || !std::isfinite(r))
    throw ContractError("strichartz_scan: need 2 <= r < infinity");
  if (std::abs(1.0 / q + 1.0 / r - 0.5) > 1e-9)
    throw ContractError("strichartz_scan: exponents must satisfy 1/q + 1/r = 1/2");
  const Real nyq = (2.0 * kPi / cfg.box) * (cfg.n / 2);
  if (2.0 * lambda_max > nyq)
    throw ContractError("strichartz_scan: band exceeds the grid Nyquist frequency");

  GridPtr coarse = make_grid(cfg.n, cfg.box);
  GridPtr fine = make_grid(2 * cfg.n, cfg.box);
  const Real dt = cfg.window / cfg.nt;
  const bool sup_t = std::isinf(q);

  StrichartzScanResult out;
  out.q = q;
  out.r = r;
  std::vector<Real> lams;
  if (lambda_max == 1.0) lams.push_back(1.0);
  else for (Real l = 2.0; l <= lambda_max; l *= 2.0) lams.push_back(l);

  for (Real lam : lams) {
    const std::uint64_t cseed = cell_seed(cfg, 1, 0, lam, lam);
    std::vector<Real> norms = parallel_map<Real>(cfg.trials, [&](Index trial) {
      Rng rng(derive_seed(cseed, static_cast<std::uint64_t>(trial)));
      ScalarField f = random_scalar_band(coarse, lam, rng);
      Real acc = 0.0, peak = 0.0;
      for (int k = 0; k < cfg.nt; ++k) {
        ScalarField u = to_physical(pad_spectrum(free_propagate(f, cfg.m, WaveSign::Plus, dt * k), fine));
        Real sr = 0.0;
        for (Index i = 0; i < fine->size(); ++i)
          sr += std::pow(std::abs(u.data(i, 0)), r);
        const Real nr = std::pow(fine->cell_volume() * sr, 1.0 / r);
        if (sup_t) peak = std::max(peak, nr);
        else acc += dt * std::pow(nr, q);
      }
      return sup_t ? peak : std::pow(acc, 1.0 / q);
    });
    ScanCell cell;
    cell.mu = 0.0;
    cell.lambda1 = cell.lambda2 = lam;
    cell.norms = std::move(norms);
    cell.mean = mean_of(cell.norms);
    cell.predicted = std::pow(lam, sup_t ? 0.0 : 2.0 / q);
    out.cells.push_back(std::move(cell));
  }
  out.predicted_exponent = sup_t ? 0.0 : 2.0 / q;
  if (out.cells.size() >= 3) {
    std::vector<Real> xs, ys;
    for (const ScanCell& c : out.cells) {
      xs.push_back(c.lambda1);
      ys.push_back(c.mean);
    }
    out.fitted_exponent = fitted_exponent(xs, ys);
  } else {
    out.fitted_exponent = kNaN;
  }
  return out;
}

ScalingScanResult bilinear_scan(const ScanConfig& cfg, Interaction ia, Real mu,
                                Real lambda1, Real lambda2) {
  validate_config(cfg);
  validate_cell(cfg, mu, lambda1, lambda2);
  GridPtr coarse = make_grid(cfg.n, cfg.box);
  const WaveSign s2 = ia == Interaction::PlusMinus ? WaveSign::Minus : WaveSign::Plus;

  ScalingScanResult out;
  out.interaction = ia;
  out.piece = 0;
  out.mu = mu;
  out.lambda1 = lambda1;
  out.lambda2 = lambda2;

  std::vector<std::pair<Real, Real>> cells;  // (l1, l2) family, increasing
  if (lambda1 == lambda2)
    for (Real ell : scale_family(mu, lambda1)) cells.emplace_back(ell, ell);
  else
    cells.emplace_back(lambda1, lambda2);

  for (auto [l1, l2] : cells) {
    const std::uint64_t cseed =
        cell_seed(cfg, 10 + (ia == Interaction::PlusMinus ? 1 : 0), mu, l1, l2);
    ScanCell cell;
    cell.mu = mu;
    cell.lambda1 = l1;
    cell.lambda2 = l2;
    cell.norms = parallel_map<Real>(cfg.trials, [&, l1 = l1, l2 = l2](Index trial) {
      Rng rng(derive_seed(cseed, static_cast<std::uint64_t>(trial)));
      ScalarField f = random_scalar_band(coarse, l1, rng);
      ScalarField g = random_scalar_band(coarse, l2, rng);
      return product_band_norm(cfg, f, WaveSign::Plus, g, s2, mu);
    });
    cell.mean = mean_of(cell.norms);
    cell.predicted = predicted_bilinear_bound(ia, mu, l1, l2);
    out.cells.push_back(std::move(cell));
  }
  finish_fit(out);
  return out;
}

ScalingScanResult nullform_scan(const ScanConfig& cfg, int j, Interaction ia, Real mu,
                                Real lambda1, Real lambda2) {
  validate_config(cfg);
  q_piece(j);  // validate the piece index up front
  validate_cell(cfg, mu, lambda1, lambda2);
  GridPtr coarse = make_grid(cfg.n, cfg.box);
  const WaveSign s2 = ia == Interaction::PlusMinus ? WaveSign::Minus : WaveSign::Plus;

  ScalingScanResult out;
  out.interaction = ia;
  out.piece = j;
  out.mu = mu;
  out.lambda1 = lambda1;
  out.lambda2 = lambda2;

  std::vector<std::pair<Real, Real>> cells;
  if (lambda1 == lambda2)
    for (Real ell : scale_family(mu, lambda1)) cells.emplace_back(ell, ell);
  else
    cells.emplace_back(lambda1, lambda2);

  for (auto [l1, l2] : cells) {
    const std::uint64_t cseed =
        cell_seed(cfg, 20 + 3 * (ia == Interaction::PlusMinus ? 1 : 0) + j, mu, l1, l2);
    ScanCell cell;
    cell.mu = mu;
    cell.lambda1 = l1;
    cell.lambda2 = l2;
    std::vector<NullPairNorms> pair =
        parallel_map<NullPairNorms>(cfg.trials, [&, l1 = l1, l2 = l2](Index trial) {
          Rng rng(derive_seed(cseed, static_cast<std::uint64_t>(trial)));
          SpinorField u0 = project(random_spinor_band(coarse, l1, rng), cfg.m, WaveSign::Plus);
          SpinorField v0 = project(random_spinor_band(coarse, l2, rng), cfg.m, s2);
          normalize_l2(u0);
          normalize_l2(v0);
          return nullpair_band_norm(cfg, u0, v0, j, s2, mu);
        });
    for (const NullPairNorms& p : pair) {
      cell.norms.push_back(p.null_norm);
      cell.plain_norms.push_back(p.plain_norm);
    }
    cell.mean = mean_of(cell.norms);
    cell.plain_mean = mean_of(cell.plain_norms);
    cell.predicted = predicted_nullform_bound(ia, mu, l1, l2);
    out.cells.push_back(std::move(cell));
  }
  finish_fit(out);
  return out;
}

std::string scan_report_csv(const std::vector<ScalingScanResult>& results) {
  std::string out = "kind,interaction,piece,mu,lambda1,lambda2,trial,measured,predicted,ratio\n";
  char line[256];
  for (const ScalingScanResult& r : results) {
    const char* kind = r.piece == 0 ? "bilinear" : "nullform";
    const char* ia = r.interaction == Interaction::PlusPlus ? "++" : "+-";
    for (const ScanCell& c : r.cells)
      for (std::size_t t = 0; t < c.norms.size(); ++t) {
        std::snprintf(line, sizeof line, "%s,%s,%d,%g,%g,%g,%zu,%.12g,%.12g,%.12g\n", kind, ia,
                      r.piece, c.mu, c.lambda1, c.lambda2, t, c.norms[t], c.predicted,
                      c.norms[t] / c.predicted);
        out += line;
      }
  }
  return out;
}

namespace {

bool admissible4(int a, int b, int c, int d) {
  return a <= std::max({b, c, d}) + 1 && b <= std::max({a, c, d}) + 1 &&
         c <= std::max({a, b, d}) + 1 && d <= std::max({a, b, c}) + 1;
}

}  // namespace

Real dyadic_sum_ratio(Real s, Real delta, const std::vector<Real>& c1,
                      const std::vector<Real>& c2, const std::vector<Real>& c3) {
  if (!(s > 0.0) || !(delta > 0.0))
    throw ContractError("dyadic_sum_ratio: exponents must be positive");
  for (const auto* c : {&c1, &c2, &c3})
    for (Real v : *c)
      if (!(v >= 0.0)) throw ContractError("dyadic_sum_ratio: coefficients must be nonnegative");

  Real denom = 1.0;
  int kmax = -1;
  for (const auto* c : {&c1, &c2, &c3}) {
    Real w = 0.0;
    for (std::size_t k = 0; k < c->size(); ++k) {
      w += std::exp2(2.0 * s * static_cast<Real>(k)) * (*c)[k] * (*c)[k];
      if ((*c)[k] > 0.0) kmax = std::max(kmax, static_cast<int>(k));
    }
    denom *= w;
  }
  if (denom == 0.0) return 0.0;

  Real S = 0.0;
  for (int i4 = 0; i4 <= kmax + 1; ++i4) {
    Real inner = 0.0;
    for (int i1 = 0; i1 < static_cast<int>(c1.size()); ++i1) {
      if (c1[i1] == 0.0) continue;
      for (int i2 = 0; i2 < static_cast<int>(c2.size()); ++i2) {
        if (c2[i2] == 0.0) continue;
        for (int i3 = 0; i3 < static_cast<int>(c3.size()); ++i3) {
          if (c3[i3] == 0.0 || !admissible4(i1, i2, i3, i4)) continue;
          const int med = i1 + i2 + i3 - std::min({i1, i2, i3}) - std::max({i1, i2, i3});
          inner += std::exp2(s * i4 + delta * med) * c1[i1] * c2[i2] * c3[i3];
        }
      }
    }
    S += inner * inner;
  }
  return S / denom;
}

Real dyadic_sum_max_ratio(Real s, Real delta, int support_len, int trials, std::uint64_t seed) {
  if (support_len < 1 || trials < 1)
    throw ContractError("dyadic_sum_max_ratio: need positive support and trials");
  Real worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<std::vector<Real>> c(3, std::vector<Real>(support_len));
    for (auto& cj : c)
      for (Real& v : cj) v = std::abs(rng.normal());
    worst = std::max(worst, dyadic_sum_ratio(s, delta, c[0], c[1], c[2]));
  }
  return worst;
}

}  // namespace dirac
