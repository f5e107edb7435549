#include "equinorm/norm.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <utility>

namespace equinorm {

const char* preset_name(Preset p) {
  switch (p) {
    case Preset::batch_norm: return "BatchNorm";
    case Preset::instance_norm: return "InstanceNorm";
    case Preset::layer_norm_chw: return "LayerNorm-CHW";
    case Preset::layer_norm_c: return "LayerNorm-C";
    default: return "LayerNorm-AF";
  }
}

NormConfig preset(Preset p) {
  NormConfig cfg;
  switch (p) {
    case Preset::batch_norm:
      cfg.center_axes = kBatchSpatialAxes;
      cfg.scale_axes = kBatchSpatialAxes;
      cfg.affine_axes = AxisSet{Axis::C};
      cfg.track_running_stats = true;
      break;
    case Preset::instance_norm:
      cfg.center_axes = kSpatialAxes;
      cfg.scale_axes = kSpatialAxes;
      cfg.affine_axes = std::nullopt;
      break;
    case Preset::layer_norm_chw:
      cfg.center_axes = AxisSet{Axis::C, Axis::H, Axis::W};
      cfg.scale_axes = AxisSet{Axis::C, Axis::H, Axis::W};
      cfg.affine_axes = AxisSet{Axis::C, Axis::H, Axis::W};
      break;
    case Preset::layer_norm_c:
      cfg.center_axes = AxisSet{Axis::C};
      cfg.scale_axes = AxisSet{Axis::C};
      cfg.affine_axes = AxisSet{Axis::C};
      break;
    case Preset::layer_norm_af:
      cfg.center_axes = AxisSet{Axis::C};
      cfg.scale_axes = AxisSet{Axis::C, Axis::H, Axis::W};
      cfg.affine_axes = AxisSet{Axis::C};
      break;
  }
  return cfg;
}

NormConfig preset(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string n = lower(name);
  for (Preset p : kAllPresets)
    if (n == lower(preset_name(p))) return preset(p);
  throw Error("unknown normalization preset: " + std::string(name));
}

namespace {

Dims affine_dims(const Dims& d, AxisSet axes) {
  Dims out{1, 1, 1, 1};
  for (Axis a : {Axis::B, Axis::C, Axis::H, Axis::W})
    if (axes.has(a)) out.extent(a) = d.extent(a);
  return out;
}

void validate_config(const NormConfig& cfg) {
  if (cfg.epsilon < 0.0) throw Error("epsilon must be nonnegative");
  if (cfg.track_running_stats &&
      (cfg.center_axes != kBatchSpatialAxes || cfg.scale_axes != kBatchSpatialAxes))
    throw Error("running statistics require batch-statistics axes (B,H,W)");
}

void validate_params(const NormConfig& cfg, const Dims& d, const AffineParams& params) {
  if (params.present() != cfg.affine_axes.has_value())
    throw ShapeError("affine parameters must be present exactly when the config has an affine step");
  if (!params.present()) return;
  const Dims want = affine_dims(d, *cfg.affine_axes);
  if (params.gamma->dims() != want || params.beta->dims() != want)
    throw ShapeError("affine parameter dims " + params.gamma->dims().to_string() +
                     " do not match expected " + want.to_string());
}

// Raises ZeroVarianceError at the first offending reduced index.
void check_nonzero_variance(const ReducedStat& var, double epsilon) {
  if (epsilon > 0.0) return;
  const Dims& d = var.dims();
  for (Eigen::Index b = 0; b < d.b; ++b)
    for (Eigen::Index c = 0; c < d.c; ++c)
      for (Eigen::Index h = 0; h < d.h; ++h)
        for (Eigen::Index w = 0; w < d.w; ++w)
          if (var(b, c, h, w) == 0.0) throw ZeroVarianceError({b, c, h, w});
}

ReducedStat inv_std(const ReducedStat& var, double epsilon) {
  Eigen::ArrayXd denom = (var.data() + epsilon).sqrt();
  return ReducedStat(var.dims(), std::move(denom));
}

Eigen::ArrayXd channel_vector(const ReducedStat& s) {
  return s.data();  // dims (1, C, 1, 1): storage is exactly the channel vector
}

}  // namespace

AffineParams init_params(const NormConfig& cfg, const Dims& dims, InitScheme scheme,
                         Rng& rng) {
  if (!cfg.affine_axes.has_value()) return AffineParams::none();
  const Dims pd = affine_dims(dims, *cfg.affine_axes);
  AffineParams params;
  if (scheme == InitScheme::defaults) {
    params.gamma = FeatureMap::constant(pd, 1.0);
    params.beta = FeatureMap::zeros(pd);
    return params;
  }
  Eigen::ArrayXd g(pd.count()), b(pd.count());
  for (Eigen::Index i = 0; i < pd.count(); ++i) g[i] = rng.normal();
  for (Eigen::Index i = 0; i < pd.count(); ++i) b[i] = rng.normal();
  params.gamma = FeatureMap(pd, std::move(g));
  params.beta = FeatureMap(pd, std::move(b));
  return params;
}

AffineParams init_params(const NormConfig& cfg, const Dims& dims, InitScheme scheme,
                         std::uint64_t seed) {
  Rng rng(seed);
  return init_params(cfg, dims, scheme, rng);
}

FeatureMap normalize(const FeatureMap& x, const NormConfig& cfg,
                     const AffineParams& params, RunningStats* state) {
  validate_config(cfg);
  validate_params(cfg, x.dims(), params);
  if (cfg.track_running_stats != (state != nullptr))
    throw Error("running-stats state must be passed exactly when tracked");

  const Dims& d = x.dims();
  FeatureMap y = x;

  if (cfg.track_running_stats && cfg.mode == Mode::evaluation) {
    const Dims cd{1, d.c, 1, 1};
    const ReducedStat mu(cd, state->mean);
    const ReducedStat var(cd, state->var);
    check_nonzero_variance(var, cfg.epsilon);
    y = broadcast_combine(y, mu, BinaryOp::sub);
    y = broadcast_combine(y, inv_std(var, cfg.epsilon), BinaryOp::div);
  } else {
    std::optional<ReducedStat> batch_mu, batch_var;
    if (!cfg.center_axes.empty()) {
      batch_mu = mean_over(x, cfg.center_axes);
      y = broadcast_combine(y, *batch_mu, BinaryOp::sub);
    }
    if (!cfg.scale_axes.empty()) {
      batch_var = var_over(x, cfg.scale_axes);
      check_nonzero_variance(*batch_var, cfg.epsilon);
      y = broadcast_combine(y, inv_std(*batch_var, cfg.epsilon), BinaryOp::div);
    }
    if (cfg.track_running_stats && cfg.mode == Mode::training) {
      const double m = state->momentum;
      state->mean = (1.0 - m) * state->mean + m * channel_vector(*batch_mu);
      state->var = (1.0 - m) * state->var + m * channel_vector(*batch_var);
      state->update_count += 1;
    }
  }

  if (params.present()) {
    y = broadcast_combine(y, *params.gamma, BinaryOp::mul);
    y = broadcast_combine(y, *params.beta, BinaryOp::add);
  }
  return y;
}

}  // namespace equinorm
