#pragma once

// 3D complex-to-complex transforms built by composing Eigen's 1D FFT
// (unsupported/Eigen/FFT, kissfft backend) along each axis.
//
// forward():  physical samples -> Fourier coefficients (scaled by 1/n^3)
// inverse():  Fourier coefficients -> physical samples (unscaled synthesis)
// The pair is an exact round trip up to floating-point error.

#include <Eigen/Core>

#include "dirac/types.hpp"

namespace dirac {

class Fft3 {
public:
  explicit Fft3(int n);
  ~Fft3();
  Fft3(const Fft3&) = delete;
  Fft3& operator=(const Fft3&) = delete;

  int n() const { return n_; }

  // in-place on a length-n^3 array, x fastest
  void forward(Complex* data);
  void inverse(Complex* data);

  void forward(Eigen::VectorXcd& v) { forward(v.data()); }
  void inverse(Eigen::VectorXcd& v) { inverse(v.data()); }

private:
  struct Impl;
  int n_;
  Impl* impl_;
};

// Per-thread plan cache; references stay valid for the thread's lifetime.
Fft3& fft3_for(int n);

}  // namespace dirac
