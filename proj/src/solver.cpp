#include "dirac/solver.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "dirac/multiplier.hpp"
#include "dirac/random_fields.hpp"

namespace dirac {

namespace {

void require_pair(const HalfWavePair& pair, const char* where) {
  require_repr(pair.plus, Repr::Spectral, where);
  require_repr(pair.minus, Repr::Spectral, where);
  if (!pair.plus.grid->same_layout(*pair.minus.grid))
    throw ContractError(std::string(where) + ": half-wave grids differ");
}

// y += a * x, componentwise over both halves.
void pair_axpy(HalfWavePair& y, Real a, const HalfWavePair& x) {
  for (int c = 0; c < 4; ++c) {
    y.plus.comp[c] += a * x.plus.comp[c];
    y.minus.comp[c] += a * x.minus.comp[c];
  }
}

HalfWavePair pair_scaled_sum(const HalfWavePair& base, Real a,
                             const HalfWavePair& dir) {
  HalfWavePair out = base;
  pair_axpy(out, a, dir);
  return out;
}

bool pair_finite(const HalfWavePair& pair) {
  return all_finite(pair.plus) && all_finite(pair.minus);
}

HalfWavePair free_pair(const HalfWavePair& pair, Real m, Real t) {
  return {free_propagate(pair.plus, m, WaveSign::Plus, t),
          free_propagate(pair.minus, m, WaveSign::Minus, t)};
}

// Pulled-back nonlinearity at frame time s: w holds the free-frame state,
// the result is S(-s) i coupling Pi_pm F(psi(s)) for psi(s) = S(s) w.
HalfWavePair etd_rhs(const HalfWavePair& w, Real s, Real m, Real coupling) {
  const HalfWavePair psi = free_pair(w, m, s);
  SpinorField f = hartree_nonlinearity(psi);
  const Complex scale(0.0, coupling);
  for (auto& c : f.comp) c *= scale;
  return {free_propagate(project(f, m, WaveSign::Plus), m, WaveSign::Plus, -s),
          free_propagate(project(f, m, WaveSign::Minus), m, WaveSign::Minus,
                         -s)};
}

Real pair_sobolev_distance(const HalfWavePair& a, const HalfWavePair& b,
                           Real s) {
  const Real dp = sobolev_distance(a.plus, b.plus, s);
  const Real dm = sobolev_distance(a.minus, b.minus, s);
  return std::sqrt(dp * dp + dm * dm);
}

struct PicardLattice {
  std::vector<Real> times;          // 2 * panels + 1 half-step nodes
  std::vector<HalfWavePair> w;      // free-frame state of the last iterate
  std::vector<Real> distances;
  std::vector<Real> ratios;
  bool contracting = false;
  bool diverged = false;
};

PicardLattice picard_lattice(const HalfWavePair& psi0, Real T, int n_iter,
                             Real m, Real s, Real coupling, int panels) {
  require_pair(psi0, "picard_iterate");
  if (!(T > 0.0) || !std::isfinite(T))
    throw ContractError("picard_iterate: need T > 0");
  if (n_iter < 1) throw ContractError("picard_iterate: need n_iter >= 1");
  if (panels < 1) throw ContractError("picard_iterate: need panels >= 1");
  const int n = psi0.plus.grid->n();
  if (n > 24)
    throw CapacityError(
        "picard_iterate: lattice history for n > 24 exceeds the memory "
        "budget; use the stepping integrator instead");

  PicardLattice lat;
  const int nodes = 2 * panels + 1;
  const Real h = T / (nodes - 1);
  lat.times.resize(nodes);
  for (int i = 0; i < nodes; ++i) lat.times[i] = h * i;

  // Iterate 0: the free solution, identically psi0 in the free frame.
  lat.w.assign(nodes, psi0);

  // Distances below this are roundoff, not contraction information; the
  // iteration is declared converged there.
  const Real roundoff_floor =
      1e-15 * std::max(1.0, sobolev_norm(psi0.plus, s) +
                                sobolev_norm(psi0.minus, s));
  int rising = 0;
  for (int k = 0; k < n_iter; ++k) {
    // Integrand of the Duhamel formula at every node of the last iterate.
    std::vector<HalfWavePair> g;
    g.reserve(nodes);
    for (int i = 0; i < nodes; ++i)
      g.push_back(etd_rhs(lat.w[i], lat.times[i], m, coupling));

    // Cumulative integral: Simpson over each pair of half-steps, and the
    // quadratic interpolant's half-panel rule for the midpoint node.
    std::vector<HalfWavePair> next(nodes, psi0);
    const Real H = 2.0 * h;
    HalfWavePair acc = psi0;  // psi0 + int_0^{t_{2j}}
    for (int j = 0; 2 * j + 2 < nodes; ++j) {
      const HalfWavePair& ga = g[2 * j];
      const HalfWavePair& gc = g[2 * j + 1];
      const HalfWavePair& gb = g[2 * j + 2];
      next[2 * j + 1] = acc;
      pair_axpy(next[2 * j + 1], H * 5.0 / 24.0, ga);
      pair_axpy(next[2 * j + 1], H * 8.0 / 24.0, gc);
      pair_axpy(next[2 * j + 1], -H * 1.0 / 24.0, gb);
      pair_axpy(acc, H / 6.0, ga);
      pair_axpy(acc, H * 4.0 / 6.0, gc);
      pair_axpy(acc, H / 6.0, gb);
      next[2 * j + 2] = acc;
    }

    Real d = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const Real dp = pair_sobolev_distance(next[i], lat.w[i], s);
      d = std::max(d, dp);
      if (!pair_finite(next[i]))
        throw BlowupError("picard_iterate: non-finite iterate", lat.times[i]);
    }
    if (!lat.distances.empty()) {
      const Real prev = lat.distances.back();
      if (prev > 0.0) lat.ratios.push_back(d / prev);
      rising = d > prev ? rising + 1 : 0;
    }
    lat.distances.push_back(d);
    lat.w = std::move(next);
    if (rising >= 3) {
      lat.diverged = true;
      break;
    }
    if (d <= roundoff_floor) break;
  }

  lat.contracting = !lat.diverged;
  for (Real r : lat.ratios)
    if (!(r < 1.0)) lat.contracting = false;
  return lat;
}

}  // namespace

void SimConfig::validate() const {
  if (n < 4) throw ContractError("SimConfig: need n >= 4");
  if (!(box > 0.0) || !std::isfinite(box))
    throw ContractError("SimConfig: need box > 0");
  if (!(m >= 0.0) || !std::isfinite(m))
    throw ContractError("SimConfig: need m >= 0");
  if (!(sobolev_s > 0.0)) throw ContractError("SimConfig: need sobolev_s > 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw ContractError("SimConfig: need epsilon >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ContractError("SimConfig: need dt > 0");
  if (!(T >= dt) || !std::isfinite(T))
    throw ContractError("SimConfig: need T >= dt");
  if (snapshot_every < 1)
    throw ContractError("SimConfig: need snapshot_every >= 1");
  if (!std::isfinite(coupling))
    throw ContractError("SimConfig: coupling must be finite");
  if (picard_iters < 1)
    throw ContractError("SimConfig: need picard_iters >= 1");
}

HalfWavePair initial_data(const SimConfig& config) {
  config.validate();
  GridPtr grid = make_grid(config.n, config.box);
  SpinorField f = SpinorField::zero(grid, Repr::Spectral);
  if (config.epsilon == 0.0) return {f, f};

  Rng rng(config.seed);
  const Real decay = -(config.sobolev_s + 2.0) / 2.0;
  for (int c = 0; c < 4; ++c)
    for (Index i = 0; i < grid->size(); ++i)
      f.comp[c][i] =
          rng.cnormal() * std::pow(1.0 + grid->freq(i).squaredNorm(), decay);
  const Real norm = sobolev_norm(f, config.sobolev_s);
  for (auto& c : f.comp) c *= config.epsilon / norm;
  return split(f, config.m);
}

SpinorField hartree_nonlinearity(const HalfWavePair& pair) {
  require_pair(pair, "hartree_nonlinearity");
  SpinorField psi = pair.plus;
  for (int c = 0; c < 4; ++c) psi.comp[c] += pair.minus.comp[c];
  const SpinorField psix = to_physical(std::move(psi));

  // The density is real up to roundoff; dropping the imaginary part keeps
  // the potential pointwise real and the semi-discrete flow unitary.
  ScalarField rho = density_beta(psix, psix);
  for (Index i = 0; i < rho.data.size(); ++i)
    rho.data[i] = Complex(rho.data[i].real(), 0.0);
  const ScalarField pot = yukawa_convolve(rho);

  SpinorField out = SpinorField::zero(psix.grid, Repr::Physical);
  for (int c = 0; c < 4; ++c) {
    const Real beta_sign = c < 2 ? 1.0 : -1.0;
    out.comp[c] = beta_sign * pot.data.cwiseProduct(psix.comp[c]);
  }
  return to_spectral(std::move(out));
}

HalfWavePair step_etd(const HalfWavePair& pair, Real dt, Real m, Real coupling,
                      Real t) {
  require_pair(pair, "step_etd");
  if (dt == 0.0 || !std::isfinite(dt))
    throw ContractError("step_etd: need a finite nonzero dt");
  if (coupling == 0.0) return free_pair(pair, m, dt);

  const HalfWavePair k1 = etd_rhs(pair, 0.0, m, coupling);
  const HalfWavePair k2 =
      etd_rhs(pair_scaled_sum(pair, dt / 2.0, k1), dt / 2.0, m, coupling);
  const HalfWavePair k3 =
      etd_rhs(pair_scaled_sum(pair, dt / 2.0, k2), dt / 2.0, m, coupling);
  const HalfWavePair k4 =
      etd_rhs(pair_scaled_sum(pair, dt, k3), dt, m, coupling);

  HalfWavePair w = pair;
  pair_axpy(w, dt / 6.0, k1);
  pair_axpy(w, dt / 3.0, k2);
  pair_axpy(w, dt / 3.0, k3);
  pair_axpy(w, dt / 6.0, k4);
  HalfWavePair out = free_pair(w, m, dt);
  if (!pair_finite(out))
    throw BlowupError("step_etd: non-finite field after step", t + dt);
  return out;
}

Trajectory evolve_from(const HalfWavePair& data, const SimConfig& config) {
  config.validate();
  require_pair(data, "evolve_from");
  if (data.plus.grid->n() != config.n ||
      std::abs(data.plus.grid->box() - config.box) > 1e-12 * config.box)
    throw ContractError("evolve_from: data grid does not match the config");

  Trajectory traj;
  traj.config = config;
  const int nsteps =
      static_cast<int>(std::ceil(config.T / config.dt - 1e-9));
  const Real l2_0 = l2_norm(data.recombine());

  auto record = [&](Real time, const HalfWavePair& state) {
    const SpinorField psi = state.recombine();
    DiagnosticsRow row;
    row.t = time;
    row.l2 = l2_norm(psi);
    row.hs = sobolev_norm(psi, config.sobolev_s);
    row.l2_drift = l2_0 > 0.0 ? row.l2 / l2_0 - 1.0 : 0.0;
    row.nonlin_l2 = config.coupling == 0.0
                        ? 0.0
                        : std::abs(config.coupling) *
                              l2_norm(hartree_nonlinearity(state));
    traj.rows.push_back(row);
  };
  auto snapshot = [&](Real time, const HalfWavePair& state) {
    if (!traj.snapshot_times.empty() && traj.snapshot_times.back() >= time)
      return;
    traj.snapshot_times.push_back(time);
    traj.snapshots.push_back(state);
  };

  HalfWavePair state = data;
  record(0.0, state);
  snapshot(0.0, state);
  for (int i = 1; i <= nsteps; ++i) {
    const Real t_prev = config.dt * (i - 1);
    const Real t_next = i == nsteps ? config.T : config.dt * i;
    try {
      state = step_etd(state, t_next - t_prev, config.m, config.coupling,
                       t_prev);
    } catch (const BlowupError& e) {
      traj.blowup_time = e.time;
      return traj;
    }
    record(t_next, state);
    if (i % config.snapshot_every == 0 || i == nsteps)
      snapshot(t_next, state);
  }
  return traj;
}

Trajectory evolve(const SimConfig& config) {
  config.validate();
  if (config.scheme == Scheme::EtdRk4)
    return evolve_from(initial_data(config), config);

  // Picard: one global Duhamel solve on a half-step lattice of spacing dt,
  // reported on the same trajectory format (every node is a row; snapshots
  // follow the configured cadence over the nodes).
  const HalfWavePair data = initial_data(config);
  const int panels =
      std::max(1, static_cast<int>(std::lround(config.T / config.dt / 2.0)));
  PicardLattice lat =
      picard_lattice(data, config.T, config.picard_iters, config.m,
                     config.sobolev_s, config.coupling, panels);

  Trajectory traj;
  traj.config = config;
  const Real l2_0 = l2_norm(data.recombine());
  const int nodes = static_cast<int>(lat.times.size());
  for (int i = 0; i < nodes; ++i) {
    const HalfWavePair state = free_pair(lat.w[i], config.m, lat.times[i]);
    const SpinorField psi = state.recombine();
    DiagnosticsRow row;
    row.t = lat.times[i];
    row.l2 = l2_norm(psi);
    row.hs = sobolev_norm(psi, config.sobolev_s);
    row.l2_drift = l2_0 > 0.0 ? row.l2 / l2_0 - 1.0 : 0.0;
    row.nonlin_l2 = config.coupling == 0.0
                        ? 0.0
                        : std::abs(config.coupling) *
                              l2_norm(hartree_nonlinearity(state));
    traj.rows.push_back(row);
    if (i == 0 || i == nodes - 1 || i % (2 * config.snapshot_every) == 0) {
      if (traj.snapshot_times.empty() ||
          traj.snapshot_times.back() < lat.times[i]) {
        traj.snapshot_times.push_back(lat.times[i]);
        traj.snapshots.push_back(state);
      }
    }
  }
  return traj;
}

PicardResult picard_iterate(const HalfWavePair& psi0, Real T, int n_iter,
                            Real m, Real s, Real coupling, int panels) {
  PicardLattice lat = picard_lattice(psi0, T, n_iter, m, s, coupling, panels);
  PicardResult out{free_pair(lat.w.back(), m, T), std::move(lat.distances),
                   std::move(lat.ratios), lat.contracting, lat.diverged};
  return out;
}

ScatterReport scattering_profile(const Trajectory& traj, WaveSign sign,
                                 Real s, Real m) {
  const int k = static_cast<int>(traj.snapshots.size());
  if (k < 2)
    throw ContractError("scattering_profile: need at least two snapshots");

  std::vector<SpinorField> g;
  g.reserve(k);
  for (int i = 0; i < k; ++i) {
    const HalfWavePair& snap = traj.snapshots[i];
    const SpinorField& half = sign == WaveSign::Plus ? snap.plus : snap.minus;
    g.push_back(free_propagate(half, m, sign, -traj.snapshot_times[i]));
  }

  ScatterReport report;
  report.times = traj.snapshot_times;
  report.residuals = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const Real r = sobolev_distance(g[i], g[j], s);
      report.residuals(i, j) = r;
      report.residuals(j, i) = r;
    }

  // Split the checkpoints at the midpoint time and record the worst
  // pairwise residual within each half.
  const Real t_mid = 0.5 * (report.times.front() + report.times.back());
  Real early = 0.0;
  Real late = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (report.times[j] <= t_mid)
        early = std::max(early, report.residuals(i, j));
      if (report.times[i] >= t_mid)
        late = std::max(late, report.residuals(i, j));
    }
  report.max_residual_early = early;
  report.max_residual_late = late;

  // Tail maxima M_k = max over pairs with both indices >= k must come down
  // (never up) as the tail shortens.
  report.scattering_consistent = true;
  Real prev = std::numeric_limits<Real>::infinity();
  for (int kk = 0; kk + 1 < k; ++kk) {
    const Real tail = report.residuals.block(kk, kk, k - kk, k - kk)
                          .maxCoeff();
    if (tail > prev) report.scattering_consistent = false;
    prev = tail;
  }
  return report;
}

}  // namespace dirac
