#include <doctest.h>

#include "dirac/spinor_algebra.hpp"

using namespace dirac;

TEST_CASE("algebra identities hold exactly in floating point") {
  // Every matrix entry is 0, +-1 or +-i, so the products below involve no
  // rounding at all; demand bitwise-zero residuals rather than a tolerance.
  for (const auto& [name, residual] : identity_residuals<Real>()) {
    CAPTURE(name);
    CHECK(residual == 0.0);
  }
}

TEST_CASE("dirac matrices are hermitian and traceless") {
  for (MatKind k : {MatKind::Alpha1, MatKind::Alpha2, MatKind::Alpha3, MatKind::Beta,
                    MatKind::S1, MatKind::S2, MatKind::S3}) {
    const Matrix4d m = dirac_matrix<Real>(k);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(m.trace()) == 0.0);
  }
}

TEST_CASE("inner is conjugate-linear in its second argument") {
  Spinord a, b;
  a << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(-1, 1);
  b << Complex(2, 1), Complex(1, 1), Complex(0, 2), Complex(1, -3);
  const Complex c(0.7, -1.3);

  CHECK(inner(a, b) == std::conj(inner(b, a)));
  CHECK(std::abs(inner(Spinord(c * a), b) - c * inner(a, b)) < 1e-14);
  CHECK(std::abs(inner(a, Spinord(c * b)) - std::conj(c) * inner(a, b)) < 1e-14);

  // explicit component formula: inner(a, b) = sum_k a_k conj(b_k)
  Complex s = 0;
  for (int k = 0; k < 4; ++k) s += a[k] * std::conj(b[k]);
  CHECK(std::abs(inner(a, b) - s) == 0.0);
}

TEST_CASE("bilinear density carries the +,+,-,- signature") {
  Spinord psi;
  psi << Complex(1, 0), Complex(0, 1), Complex(2, 0), Complex(0, -2);
  // <beta psi, psi> = |p1|^2 + |p2|^2 - |p3|^2 - |p4|^2
  CHECK(bilinear_density(psi, psi) == Complex(1 + 1 - 4 - 4, 0));
}

TEST_CASE("levi_civita matches the standard alternating values") {
  CHECK(levi_civita(1, 2, 3) == 1);
  CHECK(levi_civita(2, 3, 1) == 1);
  CHECK(levi_civita(3, 1, 2) == 1);
  CHECK(levi_civita(1, 3, 2) == -1);
  CHECK(levi_civita(2, 1, 3) == -1);
  CHECK(levi_civita(3, 2, 1) == -1);
  CHECK(levi_civita(1, 1, 2) == 0);
  CHECK(levi_civita(3, 3, 3) == 0);
}

TEST_CASE("alpha_dot and spin_dot recover the basis matrices") {
  for (int j = 1; j <= 3; ++j) {
    Vec3 e = Vec3::Zero();
    e[j - 1] = 1.0;
    CHECK((alpha_dot<Real>(e) - alpha<Real>(j)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((spin_dot<Real>(e) - spin_mat<Real>(j)).cwiseAbs().maxCoeff() == 0.0);
  }
}
