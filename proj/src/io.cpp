#include "dirac/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian");

namespace dirac {

namespace {

std::string fmt(Real x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void write_spinor_snapshot(const std::string& path, const SpinorField& f,
                           Real mass) {
  nlohmann::json header{
      {"kind", "spinor-field"},
      {"n", f.grid->n()},
      {"box", f.grid->box()},
      {"repr", f.repr == Repr::Spectral ? "spectral" : "physical"},
      {"mass", mass},
      {"components", 4},
      {"scalar", "complex128"},
  };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("snapshot: cannot open '" + path + "'");
  out << header.dump() << '\n';
  for (const auto& comp : f.comp)
    out.write(reinterpret_cast<const char*>(comp.data()),
              static_cast<std::streamsize>(sizeof(Complex) * comp.size()));
  if (!out) throw ContractError("snapshot: short write to '" + path + "'");
}

SpinorField read_spinor_snapshot(const std::string& path, Real* mass_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("snapshot: cannot open '" + path + "'");
  std::string header_line;
  if (!std::getline(in, header_line))
    throw ContractError("snapshot: missing header in '" + path + "'");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError("snapshot: bad header in '" + path + "': " + e.what());
  }
  if (header.value("kind", "") != "spinor-field" ||
      header.value("components", 0) != 4 ||
      header.value("scalar", "") != "complex128")
    throw ContractError("snapshot: unsupported layout in '" + path + "'");

  GridPtr grid = make_grid(header.at("n").get<int>(),
                           header.at("box").get<Real>());
  const Repr repr = header.at("repr").get<std::string>() == "spectral"
                        ? Repr::Spectral
                        : Repr::Physical;
  SpinorField f = SpinorField::zero(grid, repr);
  for (auto& comp : f.comp) {
    in.read(reinterpret_cast<char*>(comp.data()),
            static_cast<std::streamsize>(sizeof(Complex) * comp.size()));
    if (in.gcount() !=
        static_cast<std::streamsize>(sizeof(Complex) * comp.size()))
      throw ContractError("snapshot: truncated data in '" + path + "'");
  }
  if (mass_out) *mass_out = header.value("mass", 0.0);
  return f;
}

std::string radial_spectrum_csv(const SpinorField& f) {
  require_repr(f, Repr::Spectral, "radial_spectrum_csv");
  const Grid& g = *f.grid;
  const Real unit = 2.0 * kPi / g.box();
  const int max_shell = static_cast<int>(
      std::ceil(std::sqrt(3.0) * (g.n() / 2)));
  std::vector<long> modes(max_shell + 1, 0);
  std::vector<Real> mass(max_shell + 1, 0.0);
  for (Index i = 0; i < g.size(); ++i) {
    const int shell =
        static_cast<int>(std::lround(g.freq(i).norm() / unit));
    Real sq = 0.0;
    for (const auto& comp : f.comp) sq += std::norm(comp[i]);
    modes[shell] += 1;
    mass[shell] += sq;
  }
  const Real cell = g.box_volume();
  std::string out = "shell,modes,l2\n";
  for (int s = 0; s <= max_shell; ++s) {
    if (modes[s] == 0) continue;
    out += std::to_string(s) + "," + std::to_string(modes[s]) + "," +
           fmt(std::sqrt(cell * mass[s])) + "\n";
  }
  return out;
}

std::string diagnostics_csv(const Trajectory& traj) {
  std::string out = "t,l2,hs,l2_drift,nonlin_l2\n";
  for (const DiagnosticsRow& row : traj.rows)
    out += fmt(row.t) + "," + fmt(row.l2) + "," + fmt(row.hs) + "," +
           fmt(row.l2_drift) + "," + fmt(row.nonlin_l2) + "\n";
  return out;
}

nlohmann::json scatter_report_json(const ScatterReport& report, WaveSign sign,
                                   Real s) {
  nlohmann::json residuals = nlohmann::json::array();
  for (Eigen::Index i = 0; i < report.residuals.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < report.residuals.cols(); ++j)
      row.push_back(report.residuals(i, j));
    residuals.push_back(std::move(row));
  }
  return nlohmann::json{
      {"sign", sign == WaveSign::Plus ? "plus" : "minus"},
      {"sobolev_s", s},
      {"times", report.times},
      {"residuals", std::move(residuals)},
      {"max_residual_early", report.max_residual_early},
      {"max_residual_late", report.max_residual_late},
      {"scattering_consistent", report.scattering_consistent},
  };
}

nlohmann::json manifest_json(const RunManifest& manifest) {
  return nlohmann::json{
      {"subcommand", manifest.subcommand},
      {"config_path", manifest.config_path},
      {"outdir", manifest.outdir},
      {"seed", manifest.seed},
      {"threads", manifest.threads},
      {"version", manifest.version},
      {"params", manifest.params},
  };
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.subcommand = j.at("subcommand").get<std::string>();
  m.config_path = j.value("config_path", "");
  m.outdir = j.value("outdir", "");
  m.seed = j.value("seed", std::uint64_t{0});
  m.threads = j.value("threads", 1);
  m.version = j.value("version", "");
  m.params = j.value("params", nlohmann::json::object());
  return m;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ContractError("short write to '" + path + "'");
}

void write_manifest(const std::string& outdir, const RunManifest& manifest) {
  std::filesystem::create_directories(outdir);
  write_text_file(outdir + "/manifest.json", manifest_json(manifest).dump(2) + "\n");
}

RunManifest read_manifest(const std::string& outdir) {
  const std::string path = outdir + "/manifest.json";
  std::ifstream in(path);
  if (!in)
    throw ContractError("no manifest.json in '" + outdir +
                        "': refusing to treat it as a run directory");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ContractError("unreadable manifest in '" + outdir + "': " + e.what());
  }
  return manifest_from_json(j);
}

ConfigMap ConfigMap::parse_string(const std::string& text,
                                  const std::string& origin) {
  ConfigMap map;
  map.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trimmed(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']' || body.size() < 3)
        throw ContractError(origin + ":" + std::to_string(lineno) +
                            ": malformed section header '" + body + "'");
      section = trimmed(body.substr(1, body.size() - 2)) + ".";
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ContractError(origin + ":" + std::to_string(lineno) +
                          ": expected 'key = value', got '" + body + "'");
    const std::string key = section + trimmed(body.substr(0, eq));
    const std::string value = trimmed(body.substr(eq + 1));
    if (key == section || value.empty())
      throw ContractError(origin + ":" + std::to_string(lineno) +
                          ": empty key or value");
    if (map.entries_.count(key))
      throw ContractError(origin + ":" + std::to_string(lineno) +
                          ": duplicate key '" + key + "' (first at line " +
                          std::to_string(map.entries_[key].line) + ")");
    map.entries_[key] = Entry{value, lineno, false};
  }
  return map;
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_string(text.str(), path);
}

bool ConfigMap::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::string ConfigMap::take_string(const std::string& key,
                                   std::string fallback) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.consumed = true;
  return it->second.value;
}

Real ConfigMap::take_real(const std::string& key, Real fallback) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.consumed = true;
  std::size_t used = 0;
  Real parsed = 0;
  try {
    parsed = std::stod(it->second.value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.value.size())
    throw ContractError(origin_ + ":" + std::to_string(it->second.line) +
                        ": '" + key + "' is not a number: '" +
                        it->second.value + "'");
  return parsed;
}

int ConfigMap::take_int(const std::string& key, int fallback) {
  const Real value = take_real(key, static_cast<Real>(fallback));
  const int as_int = static_cast<int>(std::llround(value));
  if (value != static_cast<Real>(as_int)) {
    const auto it = entries_.find(key);
    throw ContractError(origin_ + ":" + std::to_string(it->second.line) +
                        ": '" + key + "' must be an integer");
  }
  return as_int;
}

std::uint64_t ConfigMap::take_u64(const std::string& key,
                                  std::uint64_t fallback) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.consumed = true;
  std::size_t used = 0;
  std::uint64_t parsed = 0;
  try {
    parsed = std::stoull(it->second.value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.value.size())
    throw ContractError(origin_ + ":" + std::to_string(it->second.line) +
                        ": '" + key + "' is not an unsigned integer: '" +
                        it->second.value + "'");
  return parsed;
}

void ConfigMap::finish() const {
  std::string bad;
  for (const auto& [key, entry] : entries_) {
    if (entry.consumed) continue;
    if (!bad.empty()) bad += ", ";
    bad += "'" + key + "' (line " + std::to_string(entry.line) + ")";
  }
  if (!bad.empty())
    throw ContractError(origin_ + ": unknown keys: " + bad);
}

}  // namespace dirac
