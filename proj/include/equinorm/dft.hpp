#pragma once

#include <Eigen/Core>
#include <complex>

namespace equinorm {

using Complex = std::complex<double>;

// Unscaled forward 1-D DFT: X[h] = sum_k x[k] exp(-2*pi*i*h*k/n).
Eigen::ArrayXcd dft1(const Eigen::ArrayXcd& in);

// Inverse 1-D DFT including the 1/n factor, so idft1(dft1(x)) == x.
Eigen::ArrayXcd idft1(const Eigen::ArrayXcd& in);

// Separable 2-D transforms over an H x W array (rows then columns).
Eigen::ArrayXXcd dft2(const Eigen::ArrayXXcd& in);
Eigen::ArrayXXcd idft2(const Eigen::ArrayXXcd& in);

Eigen::ArrayXXcd dft2(const Eigen::ArrayXXd& in);

// Signed frequency index for bin k of an n-point DFT: k for k <= n/2,
// k - n above. For even n the Nyquist bin maps to +n/2.
inline Eigen::Index symmetric_frequency(Eigen::Index k, Eigen::Index n) {
  return k <= n / 2 ? k : k - n;
}

}  // namespace equinorm
