#include "equinorm/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "equinorm/metrics.hpp"
#include "equinorm/rng.hpp"
#include "equinorm/synthetic.hpp"

namespace equinorm {

const char* class_name(EquivarianceClass c) {
  switch (c) {
    case EquivarianceClass::translation: return "Translation";
    case EquivarianceClass::shift: return "Shift";
    default: return "Neither";
  }
}

EquivarianceClass classify_config(const NormConfig& cfg) {
  if (cfg.affine_axes.has_value() && cfg.affine_axes->intersects(kSpatialAxes))
    return EquivarianceClass::neither;
  if (cfg.scale_axes.empty() || cfg.scale_axes.contains(kSpatialAxes))
    return EquivarianceClass::translation;
  return EquivarianceClass::shift;
}

double shift_equivariance_exhaustive(const NormConfig& cfg, const AffineParams& params,
                                     const FeatureMap& x) {
  const FeatureMap fx = normalize(x, cfg, params);
  double worst = 0.0;
  for (long dh = 0; dh < x.dims().h; ++dh)
    for (long dw = 0; dw < x.dims().w; ++dw) {
      const FeatureMap lhs = normalize(shift2d(x, dh, dw), cfg, params);
      const FeatureMap rhs = shift2d(fx, dh, dw);
      worst = std::max(worst, (lhs.data() - rhs.data()).abs().maxCoeff());
    }
  return worst;
}

Eigen::ArrayXXcd translate_naive(const Eigen::ArrayXXcd& v, double g) {
  const Eigen::Index K = v.rows();
  const Eigen::ArrayXcd phi = translation_kernel(g, K);
  Eigen::ArrayXXcd out = Eigen::ArrayXXcd::Zero(K, v.cols());
  for (Eigen::Index k = 0; k < K; ++k)
    for (Eigen::Index kp = 0; kp < K; ++kp) {
      const Eigen::Index lag = (k - kp) % K;
      out.row(k) += v.row(kp) * phi[lag < 0 ? lag + K : lag];
    }
  return out;
}

Eigen::ArrayXXcd translate_naive(const Eigen::ArrayXXd& v, double g) {
  return translate_naive(Eigen::ArrayXXcd(v.cast<Complex>()), g);
}

double unitarity_check(const Eigen::ArrayXXcd& v, double g) {
  // Integer displacements permute entries, so the mean square is identical
  // by rearrangement; computing it would only measure summation-order noise.
  if (g == std::round(g)) return 0.0;
  const Eigen::ArrayXXcd t = translate1d(v, g);
  const double before = v.abs2().mean();
  const double after = t.abs2().mean();
  return std::abs(after - before);
}

double unitarity_check(const Eigen::ArrayXXd& v, double g) {
  return unitarity_check(Eigen::ArrayXXcd(v.cast<Complex>()), g);
}

namespace {

template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> rotate_rows(
    const Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>& v, long s) {
  const Eigen::Index K = v.rows();
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(K, v.cols());
  for (Eigen::Index k = 0; k < K; ++k) {
    long src = (k - s) % K;
    out.row(k) = v.row(src < 0 ? src + K : src);
  }
  return out;
}

// Row-wise standardization of the K x D model: per row, subtract the mean
// over the D columns and divide by the biased standard deviation.
Eigen::ArrayXXd standardize_rows(const Eigen::ArrayXXd& x) {
  Eigen::ArrayXXd y(x.rows(), x.cols());
  for (Eigen::Index k = 0; k < x.rows(); ++k) {
    const double mu = x.row(k).mean();
    const double var = (x.row(k) - mu).square().mean();
    y.row(k) = (x.row(k) - mu) / std::sqrt(var);
  }
  return y;
}

// Complex analogue with |.|^2 variance; rows that are exactly zero stay zero
// (they carry no content to scale).
Eigen::ArrayXXcd standardize_rows_complex(const Eigen::ArrayXXcd& x) {
  Eigen::ArrayXXcd y(x.rows(), x.cols());
  for (Eigen::Index k = 0; k < x.rows(); ++k) {
    const Complex mu = x.row(k).mean();
    const double var = (x.row(k) - mu).abs2().mean();
    if (var == 0.0) {
      y.row(k) = Eigen::ArrayXcd::Zero(x.cols());
      continue;
    }
    y.row(k) = (x.row(k) - mu) / std::sqrt(var);
  }
  return y;
}

}  // namespace

ShiftCounterexample shift_counterexample(Eigen::Index K, Eigen::Index D,
                                         std::uint64_t seed) {
  if (K < 2 || D < 2) throw std::invalid_argument("shift_counterexample needs K, D >= 2");
  Rng rng(seed);

  // x in {-1, +1}, both values present on every row so the standardized map
  // has no zero entry.
  Eigen::ArrayXXd x(K, D);
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index d = 0; d < D; ++d) x(k, d) = rng.uniform() < 0.5 ? -1.0 : 1.0;
    if (std::abs(x.row(k).sum()) == static_cast<double>(D)) {
      x(k, rng.uniform_index(D)) = -x(k, 0);
    }
  }
  const long g = 1 + static_cast<long>(rng.uniform_index(K - 1));

  // gamma[k][d] = delta(k==0), beta = 0.
  auto apply_layer = [&](const Eigen::ArrayXXd& in) {
    Eigen::ArrayXXd y = standardize_rows(in);
    for (Eigen::Index k = 1; k < K; ++k) y.row(k).setZero();
    return y;
  };

  const Eigen::ArrayXXd xs = rotate_rows<double>(x, g);
  ShiftCounterexample out;
  out.standardized = standardize_rows(x);
  out.error = apply_layer(xs) - rotate_rows<double>(apply_layer(x), g);
  out.g = g;
  out.max_abs = out.error.abs().maxCoeff();
  return out;
}

TranslationCounterexample translation_counterexample(Eigen::Index K, Eigen::Index D,
                                                     double g, std::uint64_t seed) {
  if (K < 2 || D < 2)
    throw std::invalid_argument("translation_counterexample needs K, D >= 2");
  if (g == std::round(g))
    throw std::invalid_argument("translation_counterexample needs a non-integer g");
  Rng rng(seed);

  // u: mean zero, variance one over D.
  Eigen::ArrayXd u(D);
  for (Eigen::Index d = 0; d < D; ++d) u[d] = rng.normal();
  u -= u.mean();
  u /= std::sqrt(u.square().mean());

  Eigen::ArrayXXcd x = Eigen::ArrayXXcd::Zero(K, D);
  x.row(0) = u.cast<Complex>();

  const Eigen::ArrayXcd phi = translation_kernel(g, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double m = std::abs(phi[k]);
    if (m < 1e-12 || std::abs(m - 1.0) < 1e-12)
      throw Error("translation kernel magnitude degenerate at k=" + std::to_string(k));
  }

  const Eigen::ArrayXXcd lhs = standardize_rows_complex(translate1d(x, g));
  const Eigen::ArrayXXcd rhs = translate1d(standardize_rows_complex(x), g);

  TranslationCounterexample out;
  out.measured = lhs - rhs;
  out.closed_form = Eigen::ArrayXXcd(K, D);
  for (Eigen::Index k = 0; k < K; ++k)
    out.closed_form.row(k) = (phi[k] * (1.0 / std::abs(phi[k]) - 1.0)) * u.cast<Complex>();
  out.max_abs_diff = (out.measured - out.closed_form).abs().maxCoeff();
  out.max_abs_error = out.measured.abs().maxCoeff();
  return out;
}

namespace {

FeatureMap draw_sweep_map(const SweepOptions& opts, AxisSet scale_axes, Rng& rng) {
  // eps is 0 in the sweep, so reject (never in practice, for continuous
  // draws) maps whose scaling statistic vanishes somewhere.
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::ArrayXd data(opts.dims.count());
    for (Eigen::Index j = 0; j < data.size(); ++j) data[j] = rng.normal();
    FeatureMap m = lowpass_filter(FeatureMap(opts.dims, std::move(data)),
                                  opts.lowpass_bandwidth);
    if (scale_axes.empty() || (var_over(m, scale_axes).data() > 0.0).all())
      return m;
  }
  throw Error("could not draw a sweep map with non-vanishing variance");
}

}  // namespace

std::vector<SweepRow> equivariance_sweep(const SweepOptions& opts) {
  if (!(opts.t_lo < opts.t_hi)) throw std::invalid_argument("sweep needs t_lo < t_hi");

  std::vector<SweepRow> rows;
  rows.reserve(16 * 16 * 17);
  const Rng base(opts.seed);

  for (unsigned center = 0; center < 16; ++center)
    for (unsigned scale = 0; scale < 16; ++scale)
      for (unsigned affine_opt = 0; affine_opt < 17; ++affine_opt) {
        const std::uint64_t row_index = (center * 16ull + scale) * 17ull + affine_opt;
        Rng rng = base.fork(row_index);

        NormConfig cfg;
        cfg.center_axes = AxisSet::from_mask(center);
        cfg.scale_axes = AxisSet::from_mask(scale);
        if (affine_opt > 0) cfg.affine_axes = AxisSet::from_mask(affine_opt - 1);
        cfg.epsilon = 0.0;

        SweepRow row;
        row.center_axes = cfg.center_axes;
        row.scale_axes = cfg.scale_axes;
        row.affine_axes = cfg.affine_axes;
        row.predicted = classify_config(cfg);

        for (int i = 0; i < opts.maps_per_config; ++i) {
          const FeatureMap x = draw_sweep_map(opts, cfg.scale_axes, rng);
          const AffineParams params =
              init_params(cfg, x.dims(), InitScheme::gaussian, rng);
          row.shift_error =
              std::max(row.shift_error, shift_equivariance_exhaustive(cfg, params, x));
          const FeatureMap fx = normalize(x, cfg, params);
          for (int t = 0; t < opts.translations_per_map; ++t) {
            const Displacement g =
                sample_displacement(TransformGroup::translation, x.dims().h, x.dims().w, rng);
            const FeatureMap lhs = normalize(translate2d(x, g), cfg, params);
            const FeatureMap rhs = translate2d(fx, g);
            row.translation_error = std::max(
                row.translation_error, (lhs.data() - rhs.data()).abs().maxCoeff());
          }
        }

        const bool shift_ok = row.shift_error <= opts.t_lo;
        const bool shift_bad = row.shift_error >= opts.t_hi;
        const bool trans_ok = row.translation_error <= opts.t_lo;
        const bool trans_bad = row.translation_error >= opts.t_hi;
        if (shift_ok && trans_ok)
          row.measured = EquivarianceClass::translation;
        else if (shift_ok && trans_bad)
          row.measured = EquivarianceClass::shift;
        else if (shift_bad && trans_bad)
          row.measured = EquivarianceClass::neither;
        row.agreement = row.measured.has_value() && *row.measured == row.predicted;
        rows.push_back(std::move(row));
      }
  return rows;
}

}  // namespace equinorm
