#pragma once
// Run artifacts and configuration:
//
//   * spinor field snapshots: one JSON header line (n, box, repr, mass,
//     component count, scalar type) followed by the raw little-endian
//     complex doubles of the 4 components in order;
//   * CSV emission for trajectory diagnostics and radial spectra;
//   * JSON serialization of scattering reports and run manifests (every
//     output directory carries a manifest.json describing the fully
//     resolved run, so results can be reproduced bit for bit);
//   * the key = value configuration format, with `[section]` headers
//     turning into dotted key prefixes and parse errors reported with
//     file and line.  Consumers `take_*` the keys they understand and then
//     call finish(), which rejects unknown keys by name and line.

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

#include "dirac/field.hpp"
#include "dirac/solver.hpp"

namespace dirac {

void write_spinor_snapshot(const std::string& path, const SpinorField& f,
                           Real mass);

// Returns the field; the mass recorded in the header lands in *mass_out
// when the pointer is non-null.
SpinorField read_spinor_snapshot(const std::string& path,
                                 Real* mass_out = nullptr);

// One row per integer frequency shell: shell index, number of lattice
// modes in the shell, and the L^2 mass the field carries there.
std::string radial_spectrum_csv(const SpinorField& f);

// Columns t, l2, hs, l2_drift, nonlin_l2; doubles printed round-trip exact.
std::string diagnostics_csv(const Trajectory& traj);

nlohmann::json scatter_report_json(const ScatterReport& report, WaveSign sign,
                                   Real s);

struct RunManifest {
  std::string subcommand;
  std::string config_path;  // empty when no file was given
  std::string outdir;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string version;
  nlohmann::json params = nlohmann::json::object();
};

nlohmann::json manifest_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& content);

// manifest.json inside the given directory (created if needed).
void write_manifest(const std::string& outdir, const RunManifest& manifest);

// Throws ContractError when the directory has no readable manifest.
RunManifest read_manifest(const std::string& outdir);

class ConfigMap {
 public:
  static ConfigMap parse_file(const std::string& path);
  static ConfigMap parse_string(const std::string& text,
                                const std::string& origin);

  bool has(const std::string& key) const;
  std::string take_string(const std::string& key, std::string fallback);
  Real take_real(const std::string& key, Real fallback);
  int take_int(const std::string& key, int fallback);
  std::uint64_t take_u64(const std::string& key, std::uint64_t fallback);

  // Rejects keys nobody consumed, naming them with their line numbers.
  void finish() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
  };
  std::map<std::string, Entry> entries_;
  std::string origin_;
};

}  // namespace dirac
