#include "dirac/multiplier.hpp"

namespace dirac {

MultiplierSpec scalar_multiplier(std::string description, std::function<Complex(const Vec3&)> symbol) {
  MultiplierSpec spec;
  spec.description = std::move(description);
  spec.scalar = std::move(symbol);
  return spec;
}

MultiplierSpec matrix_multiplier(std::string description, std::function<Matrix4d(const Vec3&)> symbol) {
  MultiplierSpec spec;
  spec.description = std::move(description);
  spec.matrix = std::move(symbol);
  return spec;
}

ScalarField apply_multiplier(const ScalarField& f, const MultiplierSpec& spec) {
  require_repr(f, Repr::Spectral, "apply_multiplier");
  if (!spec.scalar)
    throw ContractError("apply_multiplier: scalar field needs a scalar symbol (" + spec.description + ")");
  ScalarField out = f;
  const Grid& g = *f.grid;
  for (Index i = 0; i < out.data.size(); ++i) out.data[i] *= spec.scalar(g.freq(i));
  return out;
}

SpinorField apply_multiplier(const SpinorField& f, const MultiplierSpec& spec) {
  require_repr(f, Repr::Spectral, "apply_multiplier");
  const Grid& g = *f.grid;
  SpinorField out = f;
  if (spec.scalar) {
    for (Index i = 0; i < g.size(); ++i) {
      const Complex s = spec.scalar(g.freq(i));
      for (int c = 0; c < 4; ++c) out.comp[c][i] *= s;
    }
    return out;
  }
  if (!spec.matrix)
    throw ContractError("apply_multiplier: empty multiplier (" + spec.description + ")");
  for (Index i = 0; i < g.size(); ++i) {
    const Matrix4d mat = spec.matrix(g.freq(i));
    out.set(i, Spinord(mat * f.at(i)));
  }
  return out;
}

Eigen::VectorXd bracket_weight(const Grid& grid, Real m) {
  if (!(m >= 0) || !std::isfinite(m)) throw ContractError("bracket_weight: mass must be >= 0");
  Eigen::VectorXd w(grid.size());
  const int n = grid.n();
  Index idx = 0;
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy) {
      const Real yz = grid.freq1d(iy) * grid.freq1d(iy) + grid.freq1d(iz) * grid.freq1d(iz);
      for (int ix = 0; ix < n; ++ix, ++idx)
        w[idx] = std::sqrt(m * m + grid.freq1d(ix) * grid.freq1d(ix) + yz);
    }
  return w;
}

Eigen::VectorXd abs_freq(const Grid& grid) { return bracket_weight(grid, 0.0); }

ScalarField yukawa_convolve(const ScalarField& density, Real normalization) {
  const bool was_physical = density.repr == Repr::Physical;
  ScalarField f = was_physical ? to_spectral(density) : density;
  const Grid& g = *f.grid;
  for (Index i = 0; i < f.data.size(); ++i)
    f.data[i] *= normalization / (1.0 + g.freq(i).squaredNorm());
  return was_physical ? to_physical(std::move(f)) : f;
}

}  // namespace dirac
