#include "dirac/fft3.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace dirac {

struct Fft3::Impl {
  explicit Impl(int size)
      : n(size),
        fft(Eigen::FFT<Real>::impl_type(), Eigen::FFT<Real>::Unscaled),
        scratch_in(size),
        scratch_out(size) {}

  enum class Dir { Fwd, Inv };

  // Apply the 1D transform along every line of the given axis.
  void transform_axis(Complex* data, int axis, Dir dir) {
    const Index stride = (axis == 0) ? 1 : (axis == 1) ? n : static_cast<Index>(n) * n;
    // Lines along `axis` are enumerated by the two remaining coordinates.
    const Index n_lines = static_cast<Index>(n) * n;
    for (Index line = 0; line < n_lines; ++line) {
      Index base;
      if (axis == 0) {
        base = line * n;
      } else if (axis == 1) {
        const Index iz = line / n, ix = line % n;
        base = ix + static_cast<Index>(n) * n * iz;
      } else {
        base = line;  // (ix, iy) pairs are contiguous in the first n^2 entries
      }
      Complex* src = data + base;
      if (stride == 1) {
        if (dir == Dir::Fwd)
          fft.fwd(scratch_out.data(), src, n);
        else
          fft.inv(scratch_out.data(), src, n);
        std::copy(scratch_out.begin(), scratch_out.end(), src);
      } else {
        for (int k = 0; k < n; ++k) scratch_in[k] = src[k * stride];
        if (dir == Dir::Fwd)
          fft.fwd(scratch_out.data(), scratch_in.data(), n);
        else
          fft.inv(scratch_out.data(), scratch_in.data(), n);
        for (int k = 0; k < n; ++k) src[k * stride] = scratch_out[k];
      }
    }
  }

  int n;
  Eigen::FFT<Real> fft;
  std::vector<Complex> scratch_in;
  std::vector<Complex> scratch_out;
};

Fft3::Fft3(int n) : n_(n), impl_(new Impl(n)) {}
Fft3::~Fft3() { delete impl_; }

void Fft3::forward(Complex* data) {
  for (int axis = 0; axis < 3; ++axis) impl_->transform_axis(data, axis, Impl::Dir::Fwd);
  const Real scale = 1.0 / (static_cast<Real>(n_) * n_ * n_);
  const Index total = static_cast<Index>(n_) * n_ * n_;
  for (Index i = 0; i < total; ++i) data[i] *= scale;
}

void Fft3::inverse(Complex* data) {
  for (int axis = 0; axis < 3; ++axis) impl_->transform_axis(data, axis, Impl::Dir::Inv);
}

Fft3& fft3_for(int n) {
  thread_local std::map<int, std::unique_ptr<Fft3>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Fft3>(n)).first;
  return *it->second;
}

}  // namespace dirac
