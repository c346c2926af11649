#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace dirac {

using Real = double;
using Complex = std::complex<Real>;
using Index = Eigen::Index;

using Vec3 = Eigen::Matrix<Real, 3, 1>;
using Vec3i = Eigen::Matrix<int, 3, 1>;

inline constexpr Real kPi = 3.14159265358979323846264338327950288;

// Contract violations: caller handed us something the operation's
// precondition forbids (wrong representation, non-dyadic scale, ...).
class ContractError : public std::invalid_argument {
public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Problem size exceeds what an (intentionally) brute-force path can afford.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate geometry where a closed-form expression loses meaning
// (e.g. tau^2 == |xi|^2 in the two-sheet resonance integrals).
class SingularConfigError : public std::runtime_error {
public:
  explicit SingularConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite field values detected while time stepping.
class BlowupError : public std::runtime_error {
public:
  BlowupError(const std::string& what, Real when) : std::runtime_error(what), time(when) {}
  Real time;
};

}  // namespace dirac
