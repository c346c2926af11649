#include "dirac/freewave.hpp"

#include <algorithm>
#include <cmath>

#include "dirac/quadrature.hpp"
#include "dirac/threading.hpp"

namespace dirac {

namespace {

// Bracket of the smallest / largest radius in a profile's support: the radial
// closed forms integrate over r = <eta>_m, and the profile argument
// |eta| = sqrt(r^2 - m^2) lies in [lo, hi] iff r lies in [bl, bh] below.
Real bracket_lo(const RadialProfile& p, Real m) {
  return std::sqrt(p.support_lo * p.support_lo + m * m);
}

Real bracket_hi(const RadialProfile& p, Real m) {
  return std::sqrt(p.support_hi * p.support_hi + m * m);
}

Real radius_of_bracket(Real u, Real m) { return std::sqrt(std::max(0.0, u * u - m * m)); }

void require_offcone(Real tau, Real xi_norm) {
  if (tau * tau == xi_norm * xi_norm) {
    throw SingularConfigError("characteristic configuration tau^2 == |xi|^2");
  }
}

}  // namespace

RadialProfile RadialProfile::indicator(Real lo, Real hi) {
  return {"indicator", [](Real) { return 1.0; }, lo, hi};
}

RadialProfile RadialProfile::smooth_bump(Real lo, Real hi) {
  const Real mid = 0.5 * (lo + hi);
  const Real half = 0.5 * (hi - lo);
  return {"smooth_bump",
          [mid, half](Real r) {
            const Real u = (r - mid) / half;
            const Real w = 1.0 - u * u;
            return w > 0 ? w * w : 0.0;
          },
          lo, hi};
}

RadialProfile RadialProfile::ramp(Real lo, Real hi) {
  return {"ramp", [hi](Real r) { return r / hi; }, lo, hi};
}

std::optional<RadialEndpoints> a_pm(Real tau, Real xi_norm, Real m) {
  if (!(xi_norm > 0)) throw ContractError("a_pm: |xi| must be positive");
  require_offcone(tau, xi_norm);
  const Real denom = tau * tau - xi_norm * xi_norm;
  const Real radicand = (denom - 4 * m * m) / denom;
  if (radicand < 0) return std::nullopt;
  const Real half_width = 0.5 * xi_norm * std::sqrt(radicand);
  return RadialEndpoints{0.5 * tau - half_width, 0.5 * tau + half_width};
}

Real I_plus_closed(const RadialProfile& f, const RadialProfile& g, Real tau, Real xi_norm,
                   Real m, Real quad_tol) {
  if (!(xi_norm > 0)) throw ContractError("I_plus_closed: |xi| must be positive");
  require_offcone(tau, xi_norm);
  if (!(tau > 0) || tau * tau - xi_norm * xi_norm < 4 * m * m) return 0.0;
  const auto ends = a_pm(tau, xi_norm, m);
  if (!ends) return 0.0;
  const Real lo = std::max({ends->a_minus, bracket_lo(f, m), tau - bracket_hi(g, m)});
  const Real hi = std::min({ends->a_plus, bracket_hi(f, m), tau - bracket_lo(g, m)});
  if (!(hi > lo)) return 0.0;
  const auto integrand = [&](Real r) {
    return r * (tau - r) * f(radius_of_bracket(r, m)) * g(radius_of_bracket(tau - r, m));
  };
  return integrate(integrand, lo, hi, quad_tol) / xi_norm;
}

Real I_minus_closed(const RadialProfile& f, const RadialProfile& g, Real tau, Real xi_norm,
                    Real m, Real quad_tol) {
  if (!(xi_norm > 0)) throw ContractError("I_minus_closed: |xi| must be positive");
  require_offcone(tau, xi_norm);
  if (!(std::abs(tau) < xi_norm)) return 0.0;
  const auto ends = a_pm(tau, xi_norm, m);
  if (!ends) return 0.0;
  const Real lo = std::max({ends->a_plus, bracket_lo(f, m), tau + bracket_lo(g, m)});
  const Real hi = std::min(bracket_hi(f, m), tau + bracket_hi(g, m));
  if (!(hi > lo)) return 0.0;
  const auto integrand = [&](Real r) {
    return r * (r - tau) * f(radius_of_bracket(r, m)) * g(radius_of_bracket(r - tau, m));
  };
  return integrate(integrand, lo, hi, quad_tol) / xi_norm;
}

Real I_pm_bruteforce(ConvolutionKind kind, const RadialProfile& f, const RadialProfile& g,
                     Real tau, const Vec3& xi, Real m, Real eps, double max_cells) {
  const Real xi_norm = xi.norm();
  if (!(xi_norm > 0)) throw ContractError("I_pm_bruteforce: |xi| must be positive");
  if (!(eps > 0)) throw ContractError("I_pm_bruteforce: mollifier width must be positive");

  const bool sum_kind = kind == ConvolutionKind::SumOfBrackets;
  const Real tail = 8 * eps;  // beyond this the Gaussian is ~1e-14 of its peak

  // For the sum kind both brackets are >= m, so tau is unreachable when
  // tau + tail <= 2m, and <eta> <= tau - m + tail bounds |eta|.
  if (sum_kind && tau + tail <= 2 * m) return 0.0;

  const Real rf_lo = f.support_lo, rf_hi = f.support_hi;
  const Real rg_lo = g.support_lo, rg_hi = g.support_hi;

  Real lo[3] = {-rf_hi, -rf_hi, std::max(-rf_hi, xi_norm - rg_hi)};
  Real hi[3] = {rf_hi, rf_hi, std::min(rf_hi, xi_norm + rg_hi)};
  for (int a = 0; a < 2; ++a) {
    lo[a] = std::max(lo[a], -rg_hi);
    hi[a] = std::min(hi[a], rg_hi);
  }
  if (sum_kind) {
    const Real reach = tau - m + tail;  // upper bound for <eta>
    const Real r_eff = radius_of_bracket(reach, m);
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::max(lo[a], -r_eff);
      hi[a] = std::min(hi[a], r_eff);
    }
  }

  Index counts[3];
  Real step[3];
  double total = 1.0;
  for (int a = 0; a < 3; ++a) {
    const Real len = hi[a] - lo[a];
    if (!(len > 0)) return 0.0;
    counts[a] = static_cast<Index>(std::ceil(len / (eps / 4)));
    step[a] = len / static_cast<Real>(counts[a]);
    total *= static_cast<double>(counts[a]);
  }
  if (total > max_cells) {
    throw CapacityError("I_pm_bruteforce: resolving width " + std::to_string(eps) +
                        " needs " + std::to_string(total) + " cells (cap " +
                        std::to_string(max_cells) + ")");
  }

  const Real m2 = m * m;
  const Real rf_lo2 = rf_lo * rf_lo, rf_hi2 = rf_hi * rf_hi;
  const Real rg_lo2 = rg_lo * rg_lo, rg_hi2 = rg_hi * rg_hi;
  const Real inv_two_eps2 = 1.0 / (2 * eps * eps);
  const Real vsign = sum_kind ? -1.0 : 1.0;

  // One partial sum per z slab, combined in slab order for determinism.
  const std::vector<Real> partial = parallel_map<Real>(counts[2], [&](Index iz) {
    const Real z = lo[2] + (static_cast<Real>(iz) + 0.5) * step[2];
    const Real dz = z - xi_norm;
    Real acc = 0;
    for (Index iy = 0; iy < counts[1]; ++iy) {
      const Real y = lo[1] + (static_cast<Real>(iy) + 0.5) * step[1];
      const Real yz2 = y * y + z * z;
      const Real yzg2 = y * y + dz * dz;
      for (Index ix = 0; ix < counts[0]; ++ix) {
        const Real x = lo[0] + (static_cast<Real>(ix) + 0.5) * step[0];
        const Real rho2 = x * x + yz2;
        if (rho2 < rf_lo2 || rho2 > rf_hi2) continue;
        const Real sig2 = x * x + yzg2;
        if (sig2 < rg_lo2 || sig2 > rg_hi2) continue;
        const Real u = std::sqrt(rho2 + m2);
        const Real v = std::sqrt(sig2 + m2);
        const Real arg = tau - u + vsign * v;
        if (std::abs(arg) > tail) continue;
        const Real weight = std::exp(-arg * arg * inv_two_eps2);
        acc += f.fn(std::sqrt(rho2)) * g.fn(std::sqrt(sig2)) * weight;
      }
    }
    return acc;
  });

  Real sum = 0;
  for (const Real p : partial) sum += p;
  const Real cell = step[0] * step[1] * step[2];
  return sum * cell / (std::sqrt(2 * kPi) * eps);
}

CalibrationReport calibrate_oracle(const std::vector<OracleProbe>& probes, double max_cells) {
  CalibrationReport report;
  for (const auto& probe : probes) {
    OracleSample sample;
    sample.label = probe.label;
    const bool sum_kind = probe.kind == ConvolutionKind::SumOfBrackets;
    sample.closed = sum_kind
                        ? I_plus_closed(probe.f, probe.g, probe.tau, probe.xi_norm, probe.m)
                        : I_minus_closed(probe.f, probe.g, probe.tau, probe.xi_norm, probe.m);
    sample.brute = I_pm_bruteforce(probe.kind, probe.f, probe.g, probe.tau,
                                   Vec3(0, 0, probe.xi_norm), probe.m, probe.eps, max_cells);
    if (sample.closed == 0) {
      throw ContractError("calibrate_oracle: probe '" + probe.label +
                          "' has vanishing closed form; pick a supported configuration");
    }
    sample.ratio = sample.brute / sample.closed;
    report.samples.push_back(sample);
  }
  if (report.samples.empty()) return report;
  Real mean = 0;
  for (const auto& s : report.samples) mean += s.ratio;
  mean /= static_cast<Real>(report.samples.size());
  report.mean_ratio = mean;
  Real spread = 0;
  for (const auto& s : report.samples) {
    spread = std::max(spread, std::abs(s.ratio / mean - 1.0));
  }
  report.max_relative_spread = spread;
  return report;
}

std::vector<OracleProbe> default_oracle_probes() {
  const auto box10 = RadialProfile::indicator(0.0, 10.0);
  std::vector<OracleProbe> probes;
  probes.push_back({"sum_analytic", ConvolutionKind::SumOfBrackets, 3.0, 1.0, 0.0, box10,
                    box10, 0.04});
  probes.push_back({"diff_analytic", ConvolutionKind::DifferenceOfBrackets, 1.0, 2.0, 0.0,
                    box10, box10, 0.08});
  probes.push_back({"sum_massive_bumps", ConvolutionKind::SumOfBrackets, 3.0, 1.0, 0.5,
                    RadialProfile::smooth_bump(0.5, 2.5), RadialProfile::smooth_bump(0.3, 2.2),
                    0.04});
  probes.push_back({"sum_mixed_profiles", ConvolutionKind::SumOfBrackets, 4.0, 1.5, 1.0,
                    RadialProfile::indicator(0.0, 2.0), RadialProfile::smooth_bump(0.3, 2.0),
                    0.04});
  probes.push_back({"sum_massless_bumps", ConvolutionKind::SumOfBrackets, 2.5, 0.7, 0.0,
                    RadialProfile::smooth_bump(0.2, 2.0), RadialProfile::smooth_bump(0.2, 2.0),
                    0.04});
  probes.push_back({"sum_ramp", ConvolutionKind::SumOfBrackets, 3.5, 2.0, 0.3,
                    RadialProfile::ramp(0.0, 2.5), RadialProfile::indicator(0.2, 2.4), 0.04});
  probes.push_back({"diff_massive_bump", ConvolutionKind::DifferenceOfBrackets, 0.8, 2.0, 0.5,
                    RadialProfile::smooth_bump(0.3, 2.5), RadialProfile::smooth_bump(0.4, 2.4),
                    0.04});
  probes.push_back({"diff_negative_tau", ConvolutionKind::DifferenceOfBrackets, -0.5, 1.5, 0.0,
                    RadialProfile::smooth_bump(0.2, 2.2), RadialProfile::smooth_bump(0.3, 2.0),
                    0.04});
  probes.push_back({"diff_indicator", ConvolutionKind::DifferenceOfBrackets, 0.5, 2.5, 1.0,
                    RadialProfile::indicator(0.0, 2.0), RadialProfile::indicator(0.1, 1.8),
                    0.04});
  probes.push_back({"diff_small_tau", ConvolutionKind::DifferenceOfBrackets, 1.2, 2.2, 0.2,
                    RadialProfile::smooth_bump(0.3, 2.3), RadialProfile::ramp(0.0, 2.1),
                    0.04});
  probes.push_back({"sum_wide_mass", ConvolutionKind::SumOfBrackets, 5.0, 2.5, 1.2,
                    RadialProfile::smooth_bump(0.4, 2.6), RadialProfile::indicator(0.2, 2.2),
                    0.04});
  probes.push_back({"diff_ramps", ConvolutionKind::DifferenceOfBrackets, 0.9, 2.4, 0.7,
                    RadialProfile::ramp(0.2, 2.2), RadialProfile::smooth_bump(0.2, 2.4),
                    0.04});
  return probes;
}

}  // namespace dirac
