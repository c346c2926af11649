#include "dirac/littlewood_paley.hpp"

#include <cmath>

namespace dirac {

namespace {
Eigen::VectorXd rho_table(const Grid& g, Real lambda) {
  if (!is_dyadic(lambda)) throw ContractError("lp_project: scale must be a dyadic 2^k");
  Eigen::VectorXd w(g.size());
  for (Index i = 0; i < g.size(); ++i) w[i] = rho_lambda(g.freq(i).norm(), lambda);
  return w;
}
}  // namespace

ScalarField lp_project(const ScalarField& f, Real lambda) {
  require_repr(f, Repr::Spectral, "lp_project");
  const Eigen::VectorXd w = rho_table(*f.grid, lambda);
  ScalarField out = f;
  out.data.array() *= w.array();
  return out;
}

SpinorField lp_project(const SpinorField& f, Real lambda) {
  require_repr(f, Repr::Spectral, "lp_project");
  const Eigen::VectorXd w = rho_table(*f.grid, lambda);
  SpinorField out = f;
  for (auto& c : out.comp) c.array() *= w.array();
  return out;
}

std::vector<Real> lp_scales(const Grid& grid) {
  const Real max_xi = std::sqrt(3.0) * grid.nyquist();
  std::vector<Real> scales{1.0};
  while (scales.back() < max_xi) scales.push_back(2.0 * scales.back());
  return scales;
}

}  // namespace dirac
