#pragma once

// Dirac/Pauli matrix algebra in the 2x2 block ("Dirac") representation.
// All constant matrices have entries in {0, +-1, +-i} and are built from
// exact integer literals, so identity residuals below are exactly zero in
// floating point, not merely small.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "dirac/types.hpp"

namespace dirac {

template <typename S = Real>
using Matrix2 = Eigen::Matrix<std::complex<S>, 2, 2>;
template <typename S = Real>
using Matrix4 = Eigen::Matrix<std::complex<S>, 4, 4>;
template <typename S = Real>
using Spinor = Eigen::Matrix<std::complex<S>, 4, 1>;

using Matrix2d = Matrix2<Real>;
using Matrix4d = Matrix4<Real>;
using Spinord = Spinor<Real>;

enum class MatKind {
  Gamma0, Gamma1, Gamma2, Gamma3,
  Alpha1, Alpha2, Alpha3,
  Beta,
  S1, S2, S3,
};

// sigma^1, sigma^2, sigma^3
template <typename S = Real>
Matrix2<S> pauli(int j) {
  using C = std::complex<S>;
  Matrix2<S> m;
  switch (j) {
    case 1: m << C(0), C(1), C(1), C(0); break;
    case 2: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case 3: m << C(1), C(0), C(0), C(-1); break;
    default: throw ContractError("pauli: index must be 1, 2 or 3");
  }
  return m;
}

namespace detail {

template <typename S>
Matrix4<S> block_diag(const Matrix2<S>& a, const Matrix2<S>& b) {
  Matrix4<S> m = Matrix4<S>::Zero();
  m.template topLeftCorner<2, 2>() = a;
  m.template bottomRightCorner<2, 2>() = b;
  return m;
}

template <typename S>
Matrix4<S> block_anti(const Matrix2<S>& upper_right, const Matrix2<S>& lower_left) {
  Matrix4<S> m = Matrix4<S>::Zero();
  m.template topRightCorner<2, 2>() = upper_right;
  m.template bottomLeftCorner<2, 2>() = lower_left;
  return m;
}

}  // namespace detail

template <typename S = Real>
Matrix4<S> dirac_matrix(MatKind kind) {
  const Matrix2<S> id2 = Matrix2<S>::Identity();
  switch (kind) {
    case MatKind::Gamma0: return detail::block_diag<S>(id2, -id2);
    case MatKind::Gamma1: return detail::block_anti<S>(pauli<S>(1), -pauli<S>(1));
    case MatKind::Gamma2: return detail::block_anti<S>(pauli<S>(2), -pauli<S>(2));
    case MatKind::Gamma3: return detail::block_anti<S>(pauli<S>(3), -pauli<S>(3));
    // alpha^j = gamma^0 gamma^j has the off-diagonal blocks with equal sign
    case MatKind::Alpha1: return detail::block_anti<S>(pauli<S>(1), pauli<S>(1));
    case MatKind::Alpha2: return detail::block_anti<S>(pauli<S>(2), pauli<S>(2));
    case MatKind::Alpha3: return detail::block_anti<S>(pauli<S>(3), pauli<S>(3));
    case MatKind::Beta:   return detail::block_diag<S>(id2, -id2);
    case MatKind::S1: return detail::block_diag<S>(pauli<S>(1), pauli<S>(1));
    case MatKind::S2: return detail::block_diag<S>(pauli<S>(2), pauli<S>(2));
    case MatKind::S3: return detail::block_diag<S>(pauli<S>(3), pauli<S>(3));
  }
  throw ContractError("dirac_matrix: unknown kind");
}

template <typename S = Real>
Matrix4<S> alpha(int j) {
  switch (j) {
    case 1: return dirac_matrix<S>(MatKind::Alpha1);
    case 2: return dirac_matrix<S>(MatKind::Alpha2);
    case 3: return dirac_matrix<S>(MatKind::Alpha3);
    default: throw ContractError("alpha: index must be 1, 2 or 3");
  }
}

template <typename S = Real>
Matrix4<S> spin_mat(int l) {
  switch (l) {
    case 1: return dirac_matrix<S>(MatKind::S1);
    case 2: return dirac_matrix<S>(MatKind::S2);
    case 3: return dirac_matrix<S>(MatKind::S3);
    default: throw ContractError("spin_mat: index must be 1, 2 or 3");
  }
}

// alpha . v for a real 3-vector v (v may be any Eigen 3-vector expression).
template <typename S = Real>
Matrix4<S> alpha_dot(const Eigen::Matrix<S, 3, 1>& v) {
  Matrix4<S> m = Matrix4<S>::Zero();
  for (int j = 0; j < 3; ++j) m += v[j] * alpha<S>(j + 1);
  return m;
}

template <typename S = Real>
Matrix4<S> spin_dot(const Eigen::Matrix<S, 3, 1>& v) {
  Matrix4<S> m = Matrix4<S>::Zero();
  for (int l = 0; l < 3; ++l) m += v[l] * spin_mat<S>(l + 1);
  return m;
}

// Sesquilinear pairing, conjugate-linear in the SECOND argument:
//   inner(a, b) = b^dagger a = sum_k a_k conj(b_k).
// Every pairing in this codebase routes through this convention.
template <typename DA, typename DB>
auto inner(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return (b.adjoint() * a)(0, 0);
}

// Pointwise density <beta psi, phi>; for phi == psi this is the real quantity
// |psi_1|^2 + |psi_2|^2 - |psi_3|^2 - |psi_4|^2.
template <typename S = Real>
std::complex<S> bilinear_density(const Spinor<S>& psi, const Spinor<S>& phi) {
  return inner(dirac_matrix<S>(MatKind::Beta) * psi, phi);
}

inline int levi_civita(int j, int k, int l) {
  if (j == k || k == l || j == l) return 0;
  if ((j == 1 && k == 2 && l == 3) || (j == 2 && k == 3 && l == 1) || (j == 3 && k == 1 && l == 2))
    return 1;
  return -1;
}

// Max-abs-entry residuals of the defining anticommutation/product identities.
// All must be exactly 0.0: the matrices are small-integer valued and the
// products never leave exactly representable values.
template <typename S = Real>
std::vector<std::pair<std::string, S>> identity_residuals() {
  using C = std::complex<S>;
  const Matrix4<S> id = Matrix4<S>::Identity();
  const Matrix4<S> beta = dirac_matrix<S>(MatKind::Beta);

  auto max_abs = [](const Matrix4<S>& m) {
    S r = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        r = std::max(r, std::max(std::abs(m(i, j).real()), std::abs(m(i, j).imag())));
    return r;
  };

  std::vector<std::pair<std::string, S>> out;
  out.emplace_back("beta^2 - I", max_abs(beta * beta - id));
  for (int j = 1; j <= 3; ++j) {
    const Matrix4<S> aj = alpha<S>(j);
    out.emplace_back("alpha" + std::to_string(j) + "^2 - I", max_abs(aj * aj - id));
    out.emplace_back("alpha" + std::to_string(j) + " beta + beta alpha" + std::to_string(j),
                     max_abs(aj * beta + beta * aj));
  }
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      const Matrix4<S> ajk = alpha<S>(j) * alpha<S>(k);
      const Matrix4<S> akj = alpha<S>(k) * alpha<S>(j);
      const S delta = (j == k) ? S(1) : S(0);
      if (j < k)
        out.emplace_back("{alpha" + std::to_string(j) + ", alpha" + std::to_string(k) + "} - 2 delta I",
                         max_abs(ajk + akj - S(2) * delta * id));
      Matrix4<S> eps_term = Matrix4<S>::Zero();
      for (int l = 1; l <= 3; ++l)
        eps_term += C(0, S(levi_civita(j, k, l))) * spin_mat<S>(l);
      out.emplace_back("alpha" + std::to_string(j) + " alpha" + std::to_string(k) +
                           " - delta I - i eps S",
                       max_abs(ajk - delta * id - eps_term));
    }
  }
  // construction cross-checks: alpha^j == gamma^0 gamma^j, beta == gamma^0
  const Matrix4<S> g0 = dirac_matrix<S>(MatKind::Gamma0);
  out.emplace_back("beta - gamma0", max_abs(beta - g0));
  for (int j = 1; j <= 3; ++j) {
    const Matrix4<S> gj = dirac_matrix<S>(static_cast<MatKind>(static_cast<int>(MatKind::Gamma0) + j));
    out.emplace_back("alpha" + std::to_string(j) + " - gamma0 gamma" + std::to_string(j),
                     max_abs(alpha<S>(j) - g0 * gj));
  }
  return out;
}

}  // namespace dirac
