#include "dirac/projections.hpp"

namespace dirac {

Matrix4d projector_symbol(const Vec3& xi, Real m, WaveSign sign) {
  const Real bracket = std::sqrt(m * m + xi.squaredNorm());
  if (bracket == 0) return 0.5 * Matrix4d::Identity();
  Matrix4d sym = alpha_dot<Real>(xi);
  sym += m * dirac_matrix<Real>(MatKind::Beta);
  return 0.5 * (Matrix4d::Identity() + (sign_of(sign) / bracket) * sym);
}

namespace {

// (alpha . xi + m beta) psi, written out per component:
//   alpha.xi swaps the upper/lower 2-blocks through sigma.xi.
inline void dirac_symbol_apply(const Vec3& xi, Real m,
                               Complex p1, Complex p2, Complex p3, Complex p4,
                               Complex& o1, Complex& o2, Complex& o3, Complex& o4) {
  const Complex xm(xi[0], -xi[1]);
  const Complex xp(xi[0], xi[1]);
  const Real x3 = xi[2];
  o1 = x3 * p3 + xm * p4 + m * p1;
  o2 = xp * p3 - x3 * p4 + m * p2;
  o3 = x3 * p1 + xm * p2 - m * p3;
  o4 = xp * p1 - x3 * p2 - m * p4;
}

}  // namespace

SpinorField project(const SpinorField& f, Real m, WaveSign sign) {
  require_repr(f, Repr::Spectral, "project");
  const Grid& g = *f.grid;
  const int n = g.n();
  SpinorField out = SpinorField::zero(f.grid, Repr::Spectral);
  const Real sgn = sign_of(sign);
  Index idx = 0;
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix, ++idx) {
        const Vec3 xi = g.freq(ix, iy, iz);
        const Real bracket = std::sqrt(m * m + xi.squaredNorm());
        const Complex p1 = f.comp[0][idx], p2 = f.comp[1][idx];
        const Complex p3 = f.comp[2][idx], p4 = f.comp[3][idx];
        if (bracket == 0) {
          out.comp[0][idx] = 0.5 * p1;
          out.comp[1][idx] = 0.5 * p2;
          out.comp[2][idx] = 0.5 * p3;
          out.comp[3][idx] = 0.5 * p4;
          continue;
        }
        Complex a1, a2, a3, a4;
        dirac_symbol_apply(xi, m, p1, p2, p3, p4, a1, a2, a3, a4);
        const Real w = sgn / bracket;
        out.comp[0][idx] = 0.5 * (p1 + w * a1);
        out.comp[1][idx] = 0.5 * (p2 + w * a2);
        out.comp[2][idx] = 0.5 * (p3 + w * a3);
        out.comp[3][idx] = 0.5 * (p4 + w * a4);
      }
  return out;
}

SpinorField HalfWavePair::recombine() const {
  if (!plus.grid->same_layout(*minus.grid) || plus.repr != minus.repr)
    throw ContractError("HalfWavePair: halves are incompatible");
  SpinorField out = plus;
  for (int c = 0; c < 4; ++c) out.comp[c] += minus.comp[c];
  return out;
}

HalfWavePair split(const SpinorField& f, Real m) {
  return HalfWavePair{project(f, m, WaveSign::Plus), project(f, m, WaveSign::Minus)};
}

namespace {
template <typename FieldT>
FieldT propagate_impl(const FieldT& f, Real m, WaveSign sign, Real t) {
  require_repr(f, Repr::Spectral, "free_propagate");
  const Eigen::VectorXd w = [&] {
    Eigen::VectorXd b(f.grid->size());
    for (Index i = 0; i < b.size(); ++i)
      b[i] = std::sqrt(m * m + f.grid->freq(i).squaredNorm());
    return b;
  }();
  FieldT out = f;
  const Real s = sign_of(sign);
  if constexpr (std::is_same_v<FieldT, ScalarField>) {
    for (Index i = 0; i < w.size(); ++i)
      out.data[i] *= std::polar(1.0, -s * t * w[i]);
  } else {
    for (Index i = 0; i < w.size(); ++i) {
      const Complex phase = std::polar(1.0, -s * t * w[i]);
      for (int c = 0; c < 4; ++c) out.comp[c][i] *= phase;
    }
  }
  return out;
}
}  // namespace

SpinorField free_propagate(const SpinorField& f, Real m, WaveSign sign, Real t) {
  return propagate_impl(f, m, sign, t);
}
ScalarField free_propagate(const ScalarField& f, Real m, WaveSign sign, Real t) {
  return propagate_impl(f, m, sign, t);
}

SpinorField inverse_bracket(const SpinorField& f, Real m) {
  require_repr(f, Repr::Spectral, "inverse_bracket");
  SpinorField out = f;
  for (Index i = 0; i < f.grid->size(); ++i) {
    const Real bracket = std::sqrt(m * m + f.grid->freq(i).squaredNorm());
    const Real w = bracket == 0 ? 0.0 : 1.0 / bracket;
    for (int c = 0; c < 4; ++c) out.comp[c][i] *= w;
  }
  return out;
}

}  // namespace dirac
