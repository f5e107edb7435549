#pragma once

#include <Eigen/Core>
#include <optional>
#include <string_view>
#include <vector>

#include "equinorm/feature_map.hpp"
#include "equinorm/rng.hpp"

namespace equinorm {

enum class Mode { training, evaluation };

// Axis-parameterized normalization: which axes the centering statistic, the
// scaling statistic, and the learned affine parameters vary over. One value
// per normalization layer.
struct NormConfig {
  AxisSet center_axes;
  AxisSet scale_axes;
  std::optional<AxisSet> affine_axes;  // absent: no affine step
  double epsilon = 1e-5;
  bool track_running_stats = false;
  Mode mode = Mode::evaluation;
};

// Learned gamma/beta, each sized to vary along exactly the affine axes and to
// be size 1 along all others.
struct AffineParams {
  std::optional<FeatureMap> gamma;
  std::optional<FeatureMap> beta;

  bool present() const { return gamma.has_value(); }
  static AffineParams none() { return {}; }
};

// Per-channel statistics maintained across training-mode calls and used for
// normalization in evaluation mode.
struct RunningStats {
  Eigen::ArrayXd mean;
  Eigen::ArrayXd var;
  double momentum = 0.1;
  long update_count = 0;

  static RunningStats identity(Eigen::Index channels) {
    RunningStats s;
    s.mean = Eigen::ArrayXd::Zero(channels);
    s.var = Eigen::ArrayXd::Ones(channels);
    return s;
  }
};

enum class Preset {
  batch_norm,
  instance_norm,
  layer_norm_chw,
  layer_norm_c,
  layer_norm_af,
};

inline constexpr Preset kAllPresets[] = {
    Preset::batch_norm, Preset::instance_norm, Preset::layer_norm_chw,
    Preset::layer_norm_c, Preset::layer_norm_af};

const char* preset_name(Preset p);
NormConfig preset(Preset p);
NormConfig preset(std::string_view name);  // throws Error on unknown names

enum class InitScheme { defaults, gaussian };

// defaults: gamma all ones, beta all zeros. gaussian: i.i.d. standard normal
// entries, deterministic per seed.
AffineParams init_params(const NormConfig& cfg, const Dims& dims, InitScheme scheme,
                         Rng& rng);
AffineParams init_params(const NormConfig& cfg, const Dims& dims, InitScheme scheme,
                         std::uint64_t seed);

// y = gamma * (x - mu) / sqrt(sigma2 + eps) + beta, with mu the mean over
// center_axes and sigma2 the variance of x over scale_axes (each step skipped
// when its axis set is empty). Training mode with running stats normalizes
// with the batch statistics and updates `state` in place
// (running <- (1-momentum)*running + momentum*batch); evaluation mode takes
// both statistics from `state`, per channel. `state` must be present exactly
// when cfg.track_running_stats.
FeatureMap normalize(const FeatureMap& x, const NormConfig& cfg,
                     const AffineParams& params, RunningStats* state = nullptr);

}  // namespace equinorm
