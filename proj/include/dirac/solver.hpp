#pragma once
// Time evolution of the coupled half-wave system
//
//   d/dt psi_pm = -/+ i <D>_m psi_pm + i coupling * Pi_pm F(psi),
//   F(psi) = (V * <beta psi, psi>) beta psi,   psi = psi_plus + psi_minus,
//
// where V is the screened Coulomb kernel (multiplier 4*pi / (1 + |xi|^2)).
//
// Two integrators are provided.
//
//   * step_etd / evolve: interaction-picture RK4.  Each step transforms to
//     the free frame w_pm(s) = S_m(-/+ s) psi_pm(t + s), applies classic RK4
//     to w' = G(s, w) (the pulled-back nonlinearity), and transforms back.
//     The free flow is applied exactly as a Fourier multiplier, so with the
//     nonlinearity switched off the step reproduces free_propagate to
//     machine precision, and the semi-discrete L^2 norm is conserved (the
//     Hartree potential is pointwise real, so the generator stays
//     skew-adjoint); the only L^2 drift is the RK4 time-integration error.
//
//   * picard_iterate: Duhamel fixed-point iteration in the same free frame,
//       w^{(k+1)}(t) = psi0 + int_0^t S(-t') i Pi_pm F(psi^{(k)}(t')) dt',
//     with the integral accumulated by composite Simpson over pairs of
//     lattice steps (so every quadrature node lies on the half-step
//     lattice).  The sup-in-time H^s distances between consecutive iterates
//     expose the contraction: for small data they decay geometrically, and
//     three consecutive increases are reported as divergence.
//
// Blow-up is detected by a non-finite field value after a step and is
// reported as BlowupError carrying the first bad timestamp; evolve converts
// that into a truncated trajectory with `blowup_time` set.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dirac/field.hpp"
#include "dirac/projections.hpp"

namespace dirac {

enum class Scheme { EtdRk4, Picard };

struct SimConfig {
  int n = 32;                  // grid points per axis
  Real box = 2.0 * kPi;        // box edge length
  Real m = 1.0;                // mass
  Real sobolev_s = 0.5;        // H^s index for data and diagnostics (> 0)
  Real epsilon = 0.01;         // H^s norm of the random initial data
  Real dt = 1e-3;              // time step
  Real T = 1.0;                // final time (> 0)
  Scheme scheme = Scheme::EtdRk4;
  std::uint64_t seed = 1;      // initial-data seed
  int snapshot_every = 100;    // snapshot cadence in steps (>= 1)
  Real coupling = 1.0;         // nonlinearity strength; 0 disables it
  int picard_iters = 8;        // iteration count when scheme == Picard
  // Largest data size with observed geometric Picard decay (measured at
  // n = 16, T = 0.5, m = 1; epsilon = 32 diverges).  Informational bound
  // for choosing the Picard scheme; not enforced.
  Real picard_small_data_max = 16.0;

  void validate() const;       // throws ContractError on a bad field
};

struct DiagnosticsRow {
  Real t = 0.0;
  Real l2 = 0.0;         // ||psi(t)||_{L^2}
  Real hs = 0.0;         // ||psi(t)||_{H^s}
  Real l2_drift = 0.0;   // l2(t) / l2(0) - 1 (0 for zero data)
  Real nonlin_l2 = 0.0;  // ||F(psi(t))||_{L^2} scaled by |coupling|
};

struct Trajectory {
  SimConfig config;
  std::vector<DiagnosticsRow> rows;       // one per step, including t = 0
  std::vector<Real> snapshot_times;       // strictly increasing
  std::vector<HalfWavePair> snapshots;    // spectral pairs at those times
  std::optional<Real> blowup_time;        // set when stepping hit non-finite
};

struct PicardResult {
  HalfWavePair final;            // psi_pm(T) of the last iterate
  std::vector<Real> distances;   // sup-in-time H^s distance between iterates
  std::vector<Real> ratios;      // distances[k+1] / distances[k] (d_k > 0)
  bool contracting = false;      // every ratio < 1
  bool diverged = false;         // distances rose on 3 consecutive iterations
};

struct ScatterReport {
  std::vector<Real> times;           // checkpoint times, strictly increasing
  Eigen::MatrixXd residuals;         // r(i,j) = ||g(t_i) - g(t_j)||_{H^s}
  Real max_residual_early = 0.0;     // max over pairs in the early half
  Real max_residual_late = 0.0;      // max over pairs in the late half
  bool scattering_consistent = false;
};

// Random H^s data: i.i.d. complex Gaussian spectral coefficients shaped by
// <xi>^{-s-2}, rescaled so the H^s norm equals epsilon exactly (zero field
// for epsilon == 0), then split into the half-wave pair by Pi_pm.
HalfWavePair initial_data(const SimConfig& config);

// F(psi) for psi = plus + minus: pointwise real density <beta psi, psi>,
// screened-Coulomb convolution, multiplication by beta psi.  Spectral in,
// spectral out.  The nonlinearity does not involve the mass.
SpinorField hartree_nonlinearity(const HalfWavePair& pair);

// One interaction-picture RK4 step of size dt (dt < 0 integrates backward).
// `t` is only used to timestamp a BlowupError.
HalfWavePair step_etd(const HalfWavePair& pair, Real dt, Real m,
                      Real coupling = 1.0, Real t = 0.0);

// Integrate the given data with the configured scheme, recording per-step
// diagnostics and snapshots every `snapshot_every` steps (plus t = 0 and
// t = T).  On blow-up returns the truncated trajectory with blowup_time.
Trajectory evolve_from(const HalfWavePair& data, const SimConfig& config);

// initial_data + evolve_from.
Trajectory evolve(const SimConfig& config);

// Duhamel iteration from psi0 up to time T with n_iter iterations on a
// Simpson lattice of `panels` panels (2 * panels + 1 nodes).  Distances
// between iterates are measured in sup-in-time H^s.
PicardResult picard_iterate(const HalfWavePair& psi0, Real T, int n_iter,
                            Real m, Real s = 0.5, Real coupling = 1.0,
                            int panels = 16);

// Pull back the chosen half-wave along the free flow, g(t) = S_m(-/+ t)^{-1}
// applied to psi_pm(t) at every snapshot, and fill the symmetric matrix of
// pairwise H^s distances.  The consistency flag checks that the tail maxima
// max_{i,j >= k} r(t_i, t_j) never increase as the tail shortens; the
// early/late fields record the worst residual among checkpoint pairs lying
// entirely in the first and second half of the time span.
ScatterReport scattering_profile(const Trajectory& traj, WaveSign sign,
                                 Real s, Real m);

}  // namespace dirac
