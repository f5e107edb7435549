#include "equinorm/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace equinorm {

namespace {

long positive_mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

bool is_integral(double g) { return g == std::round(g); }

// Phase ramp over the symmetric frequency convention for an n-point axis.
Eigen::ArrayXcd symmetric_phase(Eigen::Index n, double displacement) {
  Eigen::ArrayXcd ph(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double f = static_cast<double>(symmetric_frequency(k, n));
    const double angle = -2.0 * M_PI * f * displacement / static_cast<double>(n);
    ph[k] = Complex(std::cos(angle), std::sin(angle));
  }
  return ph;
}

}  // namespace

FeatureMap shift2d(const FeatureMap& x, long dh, long dw) {
  const Dims& d = x.dims();
  const long H = d.h, W = d.w;
  std::vector<Eigen::Index> src_h(H), src_w(W);
  for (long h = 0; h < H; ++h) src_h[h] = positive_mod(h - dh, H);
  for (long w = 0; w < W; ++w) src_w[w] = positive_mod(w - dw, W);

  FeatureMap out = FeatureMap::zeros(d);
  for (Eigen::Index b = 0; b < d.b; ++b)
    for (Eigen::Index c = 0; c < d.c; ++c) {
      auto in = x.slice(b, c);
      auto dst = out.slice(b, c);
      for (Eigen::Index h = 0; h < d.h; ++h)
        for (Eigen::Index w = 0; w < d.w; ++w) dst(h, w) = in(src_h[h], src_w[w]);
    }
  return out;
}

FeatureMap shift2d(const FeatureMap& x, const Displacement& g) {
  if (!g.integral || !is_integral(g.dh) || !is_integral(g.dw))
    throw std::invalid_argument("shift2d requires an integer displacement");
  return shift2d(x, std::lround(g.dh), std::lround(g.dw));
}

FeatureMap translate2d(const FeatureMap& x, const Displacement& g,
                       double* max_imag_residual) {
  const Dims& d = x.dims();
  const Eigen::ArrayXcd ph = symmetric_phase(d.h, g.dh);
  const Eigen::ArrayXcd pw = symmetric_phase(d.w, g.dw);

  FeatureMap out = FeatureMap::zeros(d);
  double max_imag = 0.0;
  for (Eigen::Index b = 0; b < d.b; ++b)
    for (Eigen::Index c = 0; c < d.c; ++c) {
      Eigen::ArrayXXcd spec = dft2(Eigen::ArrayXXd(x.slice(b, c)));
      for (Eigen::Index h = 0; h < d.h; ++h)
        for (Eigen::Index w = 0; w < d.w; ++w) spec(h, w) *= ph[h] * pw[w];
      const Eigen::ArrayXXcd back = idft2(spec);
      out.slice(b, c) = back.real();
      max_imag = std::max(max_imag, back.imag().abs().maxCoeff());
    }
  if (max_imag_residual) *max_imag_residual = max_imag;
  return out;
}

FeatureMap apply_displacement(const FeatureMap& x, const Displacement& g) {
  return g.integral ? shift2d(x, g) : translate2d(x, g);
}

Eigen::ArrayXXcd translate1d(const Eigen::ArrayXXcd& v, double g) {
  const Eigen::Index K = v.rows();
  if (is_integral(g)) {
    const long s = positive_mod(std::lround(g), K);
    Eigen::ArrayXXcd out(K, v.cols());
    for (Eigen::Index k = 0; k < K; ++k) out.row(k) = v.row(positive_mod(k - s, K));
    return out;
  }
  Eigen::ArrayXcd ramp(K);
  for (Eigen::Index h = 0; h < K; ++h) {
    const double angle = -2.0 * M_PI * static_cast<double>(h) * g / static_cast<double>(K);
    ramp[h] = Complex(std::cos(angle), std::sin(angle));
  }
  Eigen::ArrayXXcd out(K, v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    out.col(j) = idft1(Eigen::ArrayXcd(dft1(v.col(j)) * ramp));
  return out;
}

Eigen::ArrayXXcd translate1d(const Eigen::ArrayXXd& v, double g) {
  return translate1d(Eigen::ArrayXXcd(v.cast<Complex>()), g);
}

Eigen::ArrayXcd translation_kernel(double g, Eigen::Index length) {
  if (length < 1) throw std::invalid_argument("translation_kernel needs length >= 1");
  Eigen::ArrayXcd phi = Eigen::ArrayXcd::Zero(length);
  if (is_integral(g)) {
    phi[positive_mod(std::lround(g), length)] = Complex(1.0, 0.0);
    return phi;
  }
  const double K = static_cast<double>(length);
  for (Eigen::Index k = 0; k < length; ++k) {
    const double t = g - static_cast<double>(k);
    const double mag = std::sin(M_PI * t) / std::sin(M_PI * t / K) / K;
    const double angle = -M_PI * t * (1.0 - 1.0 / K);
    phi[k] = mag * Complex(std::cos(angle), std::sin(angle));
  }
  return phi;
}

FeatureMap upsample2x_sinc(const FeatureMap& x) {
  const Dims& d = x.dims();
  const Dims ud{d.b, d.c, 2 * d.h, 2 * d.w};

  // Per-axis spectrum relocation: (target bin, weight) pairs, with even-size
  // Nyquist bins split across the two conjugate slots.
  struct Slot {
    Eigen::Index target;
    double weight;
  };
  auto axis_slots = [](Eigen::Index n) {
    std::vector<std::vector<Slot>> slots(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (n % 2 == 0 && k == n / 2) {
        slots[k] = {{n / 2, 0.5}, {2 * n - n / 2, 0.5}};
      } else if (k <= n / 2) {
        slots[k] = {{k, 1.0}};
      } else {
        slots[k] = {{k + n, 1.0}};
      }
    }
    return slots;
  };
  const auto sh = axis_slots(d.h);
  const auto sw = axis_slots(d.w);

  FeatureMap out = FeatureMap::zeros(ud);
  for (Eigen::Index b = 0; b < d.b; ++b)
    for (Eigen::Index c = 0; c < d.c; ++c) {
      const Eigen::ArrayXXcd spec = dft2(Eigen::ArrayXXd(x.slice(b, c)));
      Eigen::ArrayXXcd big = Eigen::ArrayXXcd::Zero(ud.h, ud.w);
      for (Eigen::Index kh = 0; kh < d.h; ++kh)
        for (Eigen::Index kw = 0; kw < d.w; ++kw)
          for (const Slot& a : sh[kh])
            for (const Slot& bslot : sw[kw])
              big(a.target, bslot.target) += 4.0 * a.weight * bslot.weight * spec(kh, kw);
      out.slice(b, c) = idft2(big).real();
    }
  return out;
}

}  // namespace equinorm
