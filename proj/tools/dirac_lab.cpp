// dirac_lab: batch front end for the cubic Dirac laboratory.
//
//   simulate   integrate the half-wave system, write diagnostics, snapshots
//              and scattering reports
//   verify     run the algebra / projection / null-decomposition identity
//              suites against their tolerances
//   oracle     cross-check the closed-form resonance integrals against the
//              brute-force quadrature
//   scan       run a Strichartz, bilinear, null-form or dyadic-sum scan
//   report     aggregate the CSV artifacts of a finished run directory
//
// Every run writes a manifest.json with the fully resolved parameters, the
// seed, the thread budget and the code revision, so any output can be
// reproduced bit for bit (single-threaded runs are deterministic).
// Parameters resolve as: built-in default < config file < command line.
// Exit codes: 0 all enabled assertions passed, 1 an assertion, capacity
// limit, or run refusal failed, 2 usage or configuration error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dirac/freewave.hpp"
#include "dirac/io.hpp"
#include "dirac/nullform.hpp"
#include "dirac/projections.hpp"
#include "dirac/random_fields.hpp"
#include "dirac/scans.hpp"
#include "dirac/solver.hpp"
#include "dirac/spinor_algebra.hpp"
#include "dirac/threading.hpp"
#include "dirac/version.hpp"

namespace {

using dirac::ConfigMap;
using dirac::Real;
using nlohmann::json;

struct CheckRow {
  std::string name;
  Real value = 0.0;
  Real tolerance = 0.0;
  bool pass = false;
};

// Accumulates named pass/fail assertions; the process exit code is 0 iff
// every row passes.
struct CheckTable {
  std::vector<CheckRow> rows;

  void add(const std::string& name, Real value, Real tol) {
    rows.push_back({name, value, tol, value <= tol});
  }
  void add_flag(const std::string& name, bool ok) {
    rows.push_back({name, ok ? 0.0 : 1.0, 0.0, ok});
  }
  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const CheckRow& r) { return r.pass; });
  }
  std::string csv() const {
    std::string out = "check,value,tolerance,pass\n";
    for (const CheckRow& r : rows) {
      char buf[200];
      std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%d\n", r.name.c_str(),
                    r.value, r.tolerance, r.pass ? 1 : 0);
      out += buf;
    }
    return out;
  }
  void print() const {
    for (const CheckRow& r : rows)
      std::printf("  %-44s %12.5g  (tol %g)  %s\n", r.name.c_str(), r.value,
                  r.tolerance, r.pass ? "ok" : "FAIL");
  }
};

// Every numeric threshold the tool asserts against, overridable from the
// [tolerances] config section.
struct Tolerances {
  Real matrix_identity = 0.0;
  Real projection = 1e-11;
  Real symbol_sum = 1e-12;
  Real decomposition = 1e-10;
  Real fourier_physical = 1e-10;
  Real oracle_ratio = 0.02;
  Real exponent_margin = 0.3;
  Real l2_drift = 1e-8;
  Real dyadic_growth = 1.1;

  static Tolerances load(ConfigMap& cfg) {
    Tolerances t;
    t.matrix_identity =
        cfg.take_real("tolerances.matrix_identity", t.matrix_identity);
    t.projection = cfg.take_real("tolerances.projection", t.projection);
    t.symbol_sum = cfg.take_real("tolerances.symbol_sum", t.symbol_sum);
    t.decomposition = cfg.take_real("tolerances.decomposition", t.decomposition);
    t.fourier_physical =
        cfg.take_real("tolerances.fourier_physical", t.fourier_physical);
    t.oracle_ratio = cfg.take_real("tolerances.oracle_ratio", t.oracle_ratio);
    t.exponent_margin =
        cfg.take_real("tolerances.exponent_margin", t.exponent_margin);
    t.l2_drift = cfg.take_real("tolerances.l2_drift", t.l2_drift);
    t.dyadic_growth = cfg.take_real("tolerances.dyadic_growth", t.dyadic_growth);
    return t;
  }

  json to_json() const {
    return json{{"matrix_identity", matrix_identity},
                {"projection", projection},
                {"symbol_sum", symbol_sum},
                {"decomposition", decomposition},
                {"fourier_physical", fourier_physical},
                {"oracle_ratio", oracle_ratio},
                {"exponent_margin", exponent_margin},
                {"l2_drift", l2_drift},
                {"dyadic_growth", dyadic_growth}};
  }
};

// Fills a parameter from the config file unless the flag was given on the
// command line (command line wins; the config key is consumed either way so
// finish() only flags genuinely unknown keys).
template <typename T>
void resolve(const CLI::App& sub, const std::string& flag, T& value,
             ConfigMap& cfg, const std::string& key) {
  if (sub.count(flag) > 0) {
    (void)cfg.take_string(key, std::string{});
    return;
  }
  if constexpr (std::is_same_v<T, int>)
    value = cfg.take_int(key, value);
  else if constexpr (std::is_same_v<T, std::uint64_t>)
    value = cfg.take_u64(key, value);
  else if constexpr (std::is_same_v<T, std::string>)
    value = cfg.take_string(key, value);
  else
    value = cfg.take_real(key, value);
}

struct GlobalOpts {
  std::string config_path;
  std::string outdir;
  std::uint64_t seed = 1;
  int threads = 0;
};

dirac::RunManifest make_manifest(const GlobalOpts& g,
                                 const std::string& subcommand, json params) {
  dirac::RunManifest m;
  m.subcommand = subcommand;
  m.config_path = g.config_path;
  m.outdir = g.outdir;
  m.seed = g.seed;
  m.threads = dirac::thread_budget();
  m.version = dirac::kGitRevision;
  m.params = std::move(params);
  return m;
}

int finish_command(const std::string& outdir, const CheckTable& checks,
                   const char* label) {
  if (!checks.rows.empty()) {
    std::printf("%s checks:\n", label);
    checks.print();
    dirac::write_text_file(outdir + "/checks.csv", checks.csv());
  }
  if (checks.all_pass()) {
    std::printf("%s: PASS (artifacts in %s)\n", label, outdir.c_str());
    return 0;
  }
  std::printf("%s: FAIL (artifacts in %s)\n", label, outdir.c_str());
  return 1;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  dirac::SimConfig sim;
  std::string scheme = "etd_rk4";
  Real scatter_s = 0.1;

  void bind(CLI::App* sub) {
    sub->add_option("--n", sim.n, "grid points per axis");
    sub->add_option("--box", sim.box, "box edge length");
    sub->add_option("--m", sim.m, "mass");
    sub->add_option("--sobolev-s", sim.sobolev_s,
                    "Sobolev index of data and diagnostics");
    sub->add_option("--epsilon", sim.epsilon, "H^s size of the data");
    sub->add_option("--dt", sim.dt, "time step");
    sub->add_option("--T", sim.T, "final time");
    sub->add_option("--scheme", scheme, "etd_rk4 | picard");
    sub->add_option("--snapshot-every", sim.snapshot_every,
                    "snapshot cadence in steps");
    sub->add_option("--coupling", sim.coupling, "nonlinearity strength");
    sub->add_option("--scatter-s", scatter_s,
                    "Sobolev index of the scattering pullback");
    sub->add_option("--picard-iters", sim.picard_iters,
                    "iterations for the picard scheme");
  }

  void resolve_from(const CLI::App& sub, ConfigMap& cfg) {
    resolve(sub, "--n", sim.n, cfg, "simulate.n");
    resolve(sub, "--box", sim.box, cfg, "simulate.box");
    resolve(sub, "--m", sim.m, cfg, "simulate.m");
    resolve(sub, "--sobolev-s", sim.sobolev_s, cfg, "simulate.sobolev_s");
    resolve(sub, "--epsilon", sim.epsilon, cfg, "simulate.epsilon");
    resolve(sub, "--dt", sim.dt, cfg, "simulate.dt");
    resolve(sub, "--T", sim.T, cfg, "simulate.T");
    resolve(sub, "--scheme", scheme, cfg, "simulate.scheme");
    resolve(sub, "--snapshot-every", sim.snapshot_every, cfg,
            "simulate.snapshot_every");
    resolve(sub, "--coupling", sim.coupling, cfg, "simulate.coupling");
    resolve(sub, "--scatter-s", scatter_s, cfg, "simulate.scatter_s");
    resolve(sub, "--picard-iters", sim.picard_iters, cfg,
            "simulate.picard_iters");
    if (scheme == "etd_rk4")
      sim.scheme = dirac::Scheme::EtdRk4;
    else if (scheme == "picard")
      sim.scheme = dirac::Scheme::Picard;
    else
      throw dirac::ContractError("simulate: unknown scheme '" + scheme +
                                 "' (expected etd_rk4 or picard)");
    sim.validate();
  }

  json params() const {
    return json{{"n", sim.n},
                {"box", sim.box},
                {"m", sim.m},
                {"sobolev_s", sim.sobolev_s},
                {"epsilon", sim.epsilon},
                {"dt", sim.dt},
                {"T", sim.T},
                {"scheme", scheme},
                {"snapshot_every", sim.snapshot_every},
                {"coupling", sim.coupling},
                {"scatter_s", scatter_s},
                {"picard_iters", sim.picard_iters}};
  }
};

int cmd_simulate(const GlobalOpts& g, const SimulateOpts& o,
                 const Tolerances& tol) {
  const dirac::Trajectory traj = dirac::evolve(o.sim);
  dirac::write_text_file(g.outdir + "/diagnostics.csv",
                         dirac::diagnostics_csv(traj));

  std::string index = "index,t,plus,minus\n";
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    char plus_name[64];
    char minus_name[64];
    std::snprintf(plus_name, sizeof(plus_name), "snapshot_%04zu_plus.bin", i);
    std::snprintf(minus_name, sizeof(minus_name), "snapshot_%04zu_minus.bin",
                  i);
    dirac::write_spinor_snapshot(g.outdir + "/" + plus_name,
                                 traj.snapshots[i].plus, o.sim.m);
    dirac::write_spinor_snapshot(g.outdir + "/" + minus_name,
                                 traj.snapshots[i].minus, o.sim.m);
    char row[180];
    std::snprintf(row, sizeof(row), "%zu,%.17g,%s,%s\n", i,
                  traj.snapshot_times[i], plus_name, minus_name);
    index += row;
  }
  dirac::write_text_file(g.outdir + "/snapshots.csv", index);
  dirac::write_text_file(
      g.outdir + "/radial_spectrum.csv",
      dirac::radial_spectrum_csv(traj.snapshots.back().recombine()));

  if (traj.snapshots.size() >= 2) {
    for (dirac::WaveSign sign :
         {dirac::WaveSign::Plus, dirac::WaveSign::Minus}) {
      const dirac::ScatterReport rep =
          dirac::scattering_profile(traj, sign, o.scatter_s, o.sim.m);
      const char* name = sign == dirac::WaveSign::Plus ? "scatter_plus.json"
                                                       : "scatter_minus.json";
      dirac::write_text_file(
          g.outdir + "/" + name,
          dirac::scatter_report_json(rep, sign, o.scatter_s).dump(2) + "\n");
    }
  }

  CheckTable checks;
  checks.add_flag("no blow-up", !traj.blowup_time.has_value());
  if (traj.blowup_time)
    std::printf("blow-up detected at t = %.6g\n", *traj.blowup_time);
  Real drift = 0.0;
  for (const dirac::DiagnosticsRow& row : traj.rows)
    drift = std::max(drift, std::abs(row.l2_drift));
  checks.add("max relative L2 drift", drift, tol.l2_drift);
  return finish_command(g.outdir, checks, "simulate");
}

// ------------------------------------------------------------------ verify

struct VerifyOpts {
  int n = 8;
  Real m = 1.0;
  int trials = 4;

  void bind(CLI::App* sub) {
    sub->add_option("--n", n, "grid points per axis");
    sub->add_option("--m", m, "mass");
    sub->add_option("--trials", trials, "random trials per suite");
  }
  void resolve_from(const CLI::App& sub, ConfigMap& cfg) {
    resolve(sub, "--n", n, cfg, "verify.n");
    resolve(sub, "--m", m, cfg, "verify.m");
    resolve(sub, "--trials", trials, cfg, "verify.trials");
    if (trials < 1) throw dirac::ContractError("verify: need trials >= 1");
  }
  json params() const { return json{{"n", n}, {"m", m}, {"trials", trials}}; }
};

int cmd_verify(const GlobalOpts& g, const VerifyOpts& o,
               const Tolerances& tol) {
  CheckTable checks;

  Real algebra = 0.0;
  for (const auto& [name, residual] : dirac::identity_residuals<Real>())
    algebra = std::max(algebra, residual);
  checks.add("matrix identity residual", algebra, tol.matrix_identity);

  auto grid = dirac::make_grid(o.n, 2.0 * dirac::kPi);
  Real projection = 0.0;
  Real symbol = 0.0;
  Real decomposition = 0.0;
  Real routes = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    dirac::Rng rng(dirac::derive_seed(g.seed, 100 + t));
    dirac::SpinorField f =
        dirac::SpinorField::zero(grid, dirac::Repr::Spectral);
    for (auto& comp : f.comp)
      for (dirac::Index i = 0; i < grid->size(); ++i) comp[i] = rng.cnormal();
    // The massless projector is I/2 at the degenerate zero mode, where the
    // idempotence identities do not apply; test mass 0 away from it.
    dirac::SpinorField f0 = f;
    for (auto& comp : f0.comp) comp[grid->index(0, 0, 0)] = 0.0;
    const Real scale = dirac::l2_norm(f);

    for (Real mass : {0.0, o.m}) {
      const dirac::SpinorField& probe = mass == 0.0 ? f0 : f;
      const dirac::SpinorField plus =
          dirac::project(probe, mass, dirac::WaveSign::Plus);
      const dirac::SpinorField minus =
          dirac::project(probe, mass, dirac::WaveSign::Minus);
      dirac::SpinorField sum = plus;
      for (int c = 0; c < 4; ++c) sum.comp[c] += minus.comp[c];
      projection = std::max(projection, dirac::l2_distance(sum, probe) / scale);
      projection = std::max(
          projection,
          dirac::l2_distance(
              dirac::project(plus, mass, dirac::WaveSign::Plus), plus) /
              scale);
      projection = std::max(
          projection,
          dirac::l2_norm(dirac::project(plus, mass, dirac::WaveSign::Minus)) /
              scale);
      const Real t0 = 0.37;
      projection = std::max(
          projection,
          dirac::l2_distance(
              dirac::project(
                  dirac::free_propagate(probe, mass, dirac::WaveSign::Plus, t0),
                  mass, dirac::WaveSign::Plus),
              dirac::free_propagate(plus, mass, dirac::WaveSign::Plus, t0)) /
              scale);

      const dirac::Vec3 eta(rng.uniform() * 8.0 - 4.0,
                            rng.uniform() * 8.0 - 4.0,
                            rng.uniform() * 8.0 - 4.0);
      const dirac::Vec3 zeta(rng.uniform() * 8.0 - 4.0,
                             rng.uniform() * 8.0 - 4.0,
                             rng.uniform() * 8.0 - 4.0);
      for (dirac::WaveSign sign :
           {dirac::WaveSign::Plus, dirac::WaveSign::Minus})
        symbol =
            std::max(symbol, dirac::symbol_sum_residual(eta, zeta, mass, sign));
    }

    dirac::Rng rng2(dirac::derive_seed(g.seed, 200 + t));
    dirac::SpinorField a = dirac::random_spinor_band(grid, 2.0, rng2);
    dirac::SpinorField b = dirac::random_spinor_band(grid, 2.0, rng2);
    for (dirac::WaveSign sign :
         {dirac::WaveSign::Plus, dirac::WaveSign::Minus}) {
      const dirac::SpinorField u =
          dirac::project(a, o.m, dirac::WaveSign::Plus);
      const dirac::SpinorField v = dirac::project(b, o.m, sign);
      decomposition = std::max(decomposition,
                               dirac::decomposition_residual(u, v, sign, o.m));
      for (dirac::NullPiece piece : {dirac::NullPiece::Q1, dirac::NullPiece::Q2,
                                     dirac::NullPiece::Q3}) {
        const dirac::ScalarField fast =
            dirac::nullform_physical(u, v, piece, sign, o.m);
        const dirac::ScalarField slow =
            dirac::nullform_fourier(u, v, piece, sign, o.m);
        Real diff = 0.0;
        Real ref = 0.0;
        for (dirac::Index i = 0; i < fast.data.size(); ++i) {
          diff += std::norm(fast.data[i] - slow.data[i]);
          ref += std::norm(slow.data[i]);
        }
        routes = std::max(routes, std::sqrt(diff / std::max(ref, 1e-300)));
      }
    }
  }
  checks.add("projection identity residual", projection, tol.projection);
  checks.add("null symbol sum residual", symbol, tol.symbol_sum);
  checks.add("null decomposition residual", decomposition, tol.decomposition);
  checks.add("fourier vs physical route residual", routes,
             tol.fourier_physical);
  return finish_command(g.outdir, checks, "verify");
}

// ------------------------------------------------------------------ oracle

struct OracleOpts {
  int max_probes = 0;

  void bind(CLI::App* sub) {
    sub->add_option("--max-probes", max_probes,
                    "probe count cap, 0 = all (smoke runs)");
  }
  void resolve_from(const CLI::App& sub, ConfigMap& cfg) {
    resolve(sub, "--max-probes", max_probes, cfg, "oracle.max_probes");
  }
  json params() const { return json{{"max_probes", max_probes}}; }
};

int cmd_oracle(const GlobalOpts& g, const OracleOpts& o,
               const Tolerances& tol) {
  std::vector<dirac::OracleProbe> probes = dirac::default_oracle_probes();
  if (o.max_probes > 0 &&
      static_cast<std::size_t>(o.max_probes) < probes.size())
    probes.resize(static_cast<std::size_t>(o.max_probes));

  // The brute-force route integrates over the full sphere while the closed
  // form is the radial reduction, so their ratio is the universal azimuthal
  // constant 2 pi; the assertions are that the ratio is consistent across
  // configurations and that the calibrated constant lands on 2 pi.
  const dirac::CalibrationReport report = dirac::calibrate_oracle(probes);
  std::string csv = "label,closed,brute,ratio\n";
  CheckTable checks;
  for (const dirac::OracleSample& s : report.samples) {
    char buf[220];
    std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%.12g\n", s.label.c_str(),
                  s.closed, s.brute, s.ratio);
    csv += buf;
  }
  dirac::write_text_file(g.outdir + "/calibration.csv", csv);
  checks.add("ratio spread across probes", report.max_relative_spread,
             tol.oracle_ratio);
  checks.add("calibrated constant vs 2 pi",
             std::abs(report.mean_ratio / (2.0 * dirac::kPi) - 1.0),
             tol.oracle_ratio);
  std::printf("oracle: %zu probes, mean ratio %.6f, relative spread %.3g\n",
              report.samples.size(), report.mean_ratio,
              report.max_relative_spread);
  return finish_command(g.outdir, checks, "oracle");
}

// -------------------------------------------------------------------- scan

struct ScanOpts {
  std::string kind;
  dirac::ScanConfig scan;
  Real mu = 1.0;
  Real lambda1 = 8.0;
  Real lambda2 = 8.0;
  std::string interaction = "++";
  int piece = 1;
  Real q = 4.0;
  Real r = 4.0;
  Real lambda_max = 8.0;
  Real sum_s = 0.5;
  Real delta = 0.1;
  int support = 10;
  int sequences = 100;
  dirac::Interaction inter = dirac::Interaction::PlusPlus;

  void bind(CLI::App* sub) {
    sub->add_option("--kind", kind,
                    "strichartz | bilinear | nullform | dyadic");
    sub->add_option("--n", scan.n, "grid points per axis");
    sub->add_option("--nt", scan.nt, "time samples over the window");
    sub->add_option("--window", scan.window, "time window length");
    sub->add_option("--trials", scan.trials, "random trials per cell");
    sub->add_option("--m", scan.m, "mass");
    sub->add_option("--mu", mu, "output band");
    sub->add_option("--lambda1", lambda1, "first input band");
    sub->add_option("--lambda2", lambda2, "second input band");
    sub->add_option("--interaction", interaction, "++ | +-");
    sub->add_option("--piece", piece, "null-form piece index (1..3)");
    sub->add_option("--q", q, "time exponent");
    sub->add_option("--r", r, "space exponent");
    sub->add_option("--lambda-max", lambda_max, "largest band in the sweep");
    sub->add_option("--sum-s", sum_s, "dyadic weight exponent");
    sub->add_option("--delta", delta, "dyadic median exponent");
    sub->add_option("--support", support, "dyadic sequence support length");
    sub->add_option("--sequences", sequences, "dyadic random sequences");
  }

  void resolve_from(const CLI::App& sub, ConfigMap& cfg, std::uint64_t seed) {
    scan.seed = seed;
    resolve(sub, "--kind", kind, cfg, "scan.kind");
    resolve(sub, "--n", scan.n, cfg, "scan.n");
    resolve(sub, "--nt", scan.nt, cfg, "scan.nt");
    resolve(sub, "--window", scan.window, cfg, "scan.window");
    resolve(sub, "--trials", scan.trials, cfg, "scan.trials");
    resolve(sub, "--m", scan.m, cfg, "scan.m");
    resolve(sub, "--mu", mu, cfg, "scan.mu");
    resolve(sub, "--lambda1", lambda1, cfg, "scan.lambda1");
    resolve(sub, "--lambda2", lambda2, cfg, "scan.lambda2");
    resolve(sub, "--interaction", interaction, cfg, "scan.interaction");
    resolve(sub, "--piece", piece, cfg, "scan.piece");
    resolve(sub, "--q", q, cfg, "scan.q");
    resolve(sub, "--r", r, cfg, "scan.r");
    resolve(sub, "--lambda-max", lambda_max, cfg, "scan.lambda_max");
    resolve(sub, "--sum-s", sum_s, cfg, "scan.sum_s");
    resolve(sub, "--delta", delta, cfg, "scan.delta");
    resolve(sub, "--support", support, cfg, "scan.support");
    resolve(sub, "--sequences", sequences, cfg, "scan.sequences");
    if (kind != "strichartz" && kind != "bilinear" && kind != "nullform" &&
        kind != "dyadic")
      throw dirac::ContractError(
          "scan: unknown kind '" + kind +
          "' (expected strichartz, bilinear, nullform or dyadic)");
    if (interaction == "++")
      inter = dirac::Interaction::PlusPlus;
    else if (interaction == "+-")
      inter = dirac::Interaction::PlusMinus;
    else
      throw dirac::ContractError("scan: unknown interaction '" + interaction +
                                 "' (expected ++ or +-)");
  }

  json params() const {
    json p{{"kind", kind},          {"n", scan.n}, {"nt", scan.nt},
           {"window", scan.window}, {"trials", scan.trials}, {"m", scan.m}};
    if (kind == "strichartz") {
      p["q"] = q;
      p["r"] = r;
      p["lambda_max"] = lambda_max;
    } else if (kind == "bilinear" || kind == "nullform") {
      p["mu"] = mu;
      p["lambda1"] = lambda1;
      p["lambda2"] = lambda2;
      p["interaction"] = interaction;
      if (kind == "nullform") p["piece"] = piece;
    } else if (kind == "dyadic") {
      p["s"] = sum_s;
      p["delta"] = delta;
      p["support"] = support;
      p["sequences"] = sequences;
    }
    return p;
  }
};

int cmd_scan(const GlobalOpts& g, const ScanOpts& o, const Tolerances& tol) {
  CheckTable checks;
  std::string csv;
  json summary;

  if (o.kind == "strichartz") {
    const dirac::StrichartzScanResult res =
        dirac::strichartz_scan(o.scan, o.lambda_max, o.q, o.r);
    csv = "kind,q,r,lambda,trial,measured,predicted\n";
    for (const dirac::ScanCell& cell : res.cells)
      for (std::size_t i = 0; i < cell.norms.size(); ++i) {
        char buf[220];
        std::snprintf(buf, sizeof(buf),
                      "strichartz,%g,%g,%g,%zu,%.12g,%.12g\n", o.q, o.r,
                      cell.lambda1, i, cell.norms[i], cell.predicted);
        csv += buf;
      }
    summary = json{{"fitted_exponent", res.fitted_exponent},
                   {"predicted_exponent", res.predicted_exponent}};
    if (std::isfinite(res.fitted_exponent))
      checks.add("strichartz exponent excess",
                 res.fitted_exponent - res.predicted_exponent,
                 tol.exponent_margin);
  } else if (o.kind == "bilinear" || o.kind == "nullform") {
    const dirac::ScalingScanResult res =
        o.kind == "bilinear"
            ? dirac::bilinear_scan(o.scan, o.inter, o.mu, o.lambda1, o.lambda2)
            : dirac::nullform_scan(o.scan, o.piece, o.inter, o.mu, o.lambda1,
                                   o.lambda2);
    csv = dirac::scan_report_csv({res});
    summary = json{{"fitted_exponent", res.fitted_exponent},
                   {"predicted_exponent", res.predicted_exponent},
                   {"measured_norm", res.measured_norm},
                   {"predicted_bound", res.predicted_bound}};
    if (std::isfinite(res.fitted_exponent))
      checks.add(o.kind + " exponent excess",
                 res.fitted_exponent - res.predicted_exponent,
                 tol.exponent_margin);
    if (o.kind == "nullform" && res.cells.size() >= 2) {
      bool monotone = true;
      for (std::size_t i = 1; i < res.cells.size(); ++i)
        monotone = monotone &&
                   res.cells[i].mean / res.cells[i].plain_mean <
                       res.cells[i - 1].mean / res.cells[i - 1].plain_mean;
      checks.add_flag("null/plain gain decreases with scale", monotone);
    }
  } else {  // dyadic
    const Real r1 = dirac::dyadic_sum_max_ratio(o.sum_s, o.delta, o.support,
                                                o.sequences, g.seed);
    const Real r2 = dirac::dyadic_sum_max_ratio(o.sum_s, o.delta,
                                                2 * o.support, o.sequences,
                                                g.seed);
    csv = "support,max_ratio\n";
    char buf[140];
    std::snprintf(buf, sizeof(buf), "%d,%.12g\n%d,%.12g\n", o.support, r1,
                  2 * o.support, r2);
    csv += buf;
    summary = json{{"max_ratio", r1}, {"max_ratio_doubled", r2}};
    checks.add("dyadic growth under doubled support",
               r2 / std::max(r1, 1e-300), tol.dyadic_growth);
  }

  dirac::write_text_file(g.outdir + "/scan.csv", csv);
  dirac::write_text_file(g.outdir + "/summary.json", summary.dump(2) + "\n");
  return finish_command(g.outdir, checks, "scan");
}

// ------------------------------------------------------------------ report

bool numeric_cell(const std::string& s, Real* out) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    *out = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(pos));
      return cells;
    }
    cells.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

int cmd_report(const std::string& outdir) {
  dirac::RunManifest manifest;
  try {
    manifest = dirac::read_manifest(outdir);
  } catch (const dirac::ContractError& e) {
    std::fprintf(stderr, "report: %s\n", e.what());
    return 1;
  }

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(outdir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 4 &&
        name.substr(name.size() - 4) == ".csv" && name.rfind("report_", 0) != 0)
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  json tables = json::object();
  std::string long_csv = "file,row,column,value\n";
  for (const auto& path : files) {
    std::ifstream in(path);
    std::string line;
    if (!std::getline(in, line)) continue;
    const std::vector<std::string> columns = split_csv_line(line);
    std::map<std::string, std::vector<Real>> data;
    long rows = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const std::vector<std::string> cells = split_csv_line(line);
      for (std::size_t c = 0; c < cells.size() && c < columns.size(); ++c) {
        Real value = 0.0;
        if (!numeric_cell(cells[c], &value)) continue;
        data[columns[c]].push_back(value);
        char buf[220];
        std::snprintf(buf, sizeof(buf), "%s,%ld,%s,%.12g\n",
                      path.filename().string().c_str(), rows,
                      columns[c].c_str(), value);
        long_csv += buf;
      }
      ++rows;
    }
    json stats = json::object();
    for (const auto& [col, values] : data) {
      Real lo = values.front();
      Real hi = values.front();
      Real sum = 0.0;
      for (Real v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
      }
      stats[col] = json{{"min", lo},
                        {"max", hi},
                        {"mean", sum / static_cast<Real>(values.size())},
                        {"last", values.back()}};
    }
    tables[path.filename().string()] =
        json{{"rows", rows}, {"columns", columns}, {"stats", stats}};
  }

  const json summary{{"manifest", dirac::manifest_json(manifest)},
                     {"tables", tables}};
  dirac::write_text_file(outdir + "/report_summary.json",
                         summary.dump(2) + "\n");
  dirac::write_text_file(outdir + "/report_long.csv", long_csv);
  std::printf("report: aggregated %zu tables into %s/report_summary.json\n",
              files.size(), outdir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dirac_lab: pseudo-spectral laboratory for the cubic Dirac equation "
      "with Yukawa-Hartree coupling"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--config", g.config_path, "key = value configuration file");
  app.add_option("--outdir", g.outdir,
                 "output directory (default out-<subcommand>)");
  app.add_option("--seed", g.seed, "base random seed");
  app.add_option("--threads", g.threads,
                 "thread cap (also env DIRAC_LAB_THREADS; 0 = hardware)");

  SimulateOpts simulate_opts;
  VerifyOpts verify_opts;
  OracleOpts oracle_opts;
  ScanOpts scan_opts;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "integrate the half-wave system and profile scattering");
  simulate_opts.bind(simulate);
  CLI::App* verify = app.add_subcommand("verify", "run the identity suites");
  verify_opts.bind(verify);
  CLI::App* oracle = app.add_subcommand(
      "oracle",
      "calibrate closed-form resonance integrals against brute-force "
      "quadrature");
  oracle_opts.bind(oracle);
  CLI::App* scan = app.add_subcommand(
      "scan", "run a strichartz | bilinear | nullform | dyadic scan");
  scan_opts.bind(scan);
  CLI::App* report = app.add_subcommand(
      "report", "aggregate the CSV artifacts of a run directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n\n%s", e.what(), app.help().c_str());
    return 2;
  }

  try {
    ConfigMap cfg = g.config_path.empty()
                        ? ConfigMap::parse_string("", "<none>")
                        : ConfigMap::parse_file(g.config_path);
    if (app.count("--seed") == 0) g.seed = cfg.take_u64("seed", g.seed);
    if (app.count("--threads") == 0)
      g.threads = cfg.take_int("threads", g.threads);
    if (app.count("--outdir") == 0)
      g.outdir = cfg.take_string("outdir", g.outdir);
    if (g.threads > 0)
      setenv("DIRAC_LAB_THREADS", std::to_string(g.threads).c_str(), 1);
    const Tolerances tol = Tolerances::load(cfg);

    if (report->parsed()) {
      cfg.finish();
      if (g.outdir.empty())
        throw dirac::ContractError("report: --outdir is required");
      return cmd_report(g.outdir);
    }

    std::string name;
    json params;
    if (simulate->parsed()) {
      simulate_opts.resolve_from(*simulate, cfg);
      name = "simulate";
      params = simulate_opts.params();
    } else if (verify->parsed()) {
      verify_opts.resolve_from(*verify, cfg);
      name = "verify";
      params = verify_opts.params();
    } else if (oracle->parsed()) {
      oracle_opts.resolve_from(*oracle, cfg);
      name = "oracle";
      params = oracle_opts.params();
    } else if (scan->parsed()) {
      scan_opts.resolve_from(*scan, cfg, g.seed);
      name = "scan";
      params = scan_opts.params();
    }
    cfg.finish();
    if (g.outdir.empty()) g.outdir = "out-" + name;
    params["tolerances"] = tol.to_json();
    dirac::write_manifest(g.outdir, make_manifest(g, name, std::move(params)));

    if (simulate->parsed()) return cmd_simulate(g, simulate_opts, tol);
    if (verify->parsed()) return cmd_verify(g, verify_opts, tol);
    if (oracle->parsed()) return cmd_oracle(g, oracle_opts, tol);
    return cmd_scan(g, scan_opts, tol);
  } catch (const dirac::ContractError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const dirac::CapacityError& e) {
    std::fprintf(stderr, "capacity: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
