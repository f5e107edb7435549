#pragma once

#include <Eigen/Core>

#include "equinorm/dft.hpp"
#include "equinorm/feature_map.hpp"

namespace equinorm {

// A displacement of the image plane. `integral` marks the shift
// interpretation (whole-pixel permutation); otherwise the real-valued
// translation interpretation applies.
struct Displacement {
  double dh = 0.0;
  double dw = 0.0;
  bool integral = false;

  static Displacement shift(long dh, long dw) {
    return {static_cast<double>(dh), static_cast<double>(dw), true};
  }
  static Displacement translation(double dh, double dw) { return {dh, dw, false}; }
};

// Circular whole-pixel shift: out[b,c,h,w] = x[b,c,(h-dh) mod H,(w-dw) mod W].
// A pure permutation of pixels, exact in floating point; displacements of any
// magnitude are reduced modulo H and W.
FeatureMap shift2d(const FeatureMap& x, long dh, long dw);
FeatureMap shift2d(const FeatureMap& x, const Displacement& g);

// Sub-pixel circular translation of every (b,c) plane: DFT, phase ramp over
// the symmetric frequency range (bins above H/2, W/2 count as negative
// frequencies), inverse DFT, real part. The magnitude of the discarded
// imaginary residue, nonzero only when even-size maps carry energy at the
// Nyquist bins, is reported through `max_imag_residual` when non-null.
FeatureMap translate2d(const FeatureMap& x, const Displacement& g,
                       double* max_imag_residual = nullptr);

// Dispatch on the displacement interpretation.
FeatureMap apply_displacement(const FeatureMap& x, const Displacement& g);

// One-dimensional circular translation along the rows of a K x D array, the
// diagonal-in-Fourier operator exp(-2*pi*i*h*g/K) applied per column. Complex
// valued for non-integer g; an exact row rotation for integer g.
Eigen::ArrayXXcd translate1d(const Eigen::ArrayXXcd& v, double g);
Eigen::ArrayXXcd translate1d(const Eigen::ArrayXXd& v, double g);

// Closed-form circular convolution kernel equivalent to translate1d:
//   phi[k] = (1/K) * sin(pi(g-k)) / sin(pi(g-k)/K) * exp(-i*pi(g-k)(1-1/K))
// for non-integer g, and the Kronecker delta at (g mod K) for integer g.
Eigen::ArrayXcd translation_kernel(double g, Eigen::Index length);

// x2 sinc (Fourier zero-padding) upsampling to (B, C, 2H, 2W). The spectrum
// is embedded centered in the larger grid, Nyquist rows/columns of even-size
// inputs split half-and-half between the two conjugate slots, and scaled by 4
// so amplitudes are preserved. The output has no spectral energy at
// normalized radial frequencies above sqrt(2)/4.
FeatureMap upsample2x_sinc(const FeatureMap& x);

}  // namespace equinorm
