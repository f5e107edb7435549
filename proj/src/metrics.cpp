#include "equinorm/metrics.hpp"

#include <cmath>
#include <string>

namespace equinorm {

const char* group_name(TransformGroup g) {
  return g == TransformGroup::shift ? "shift" : "translation";
}

double cosine_distance(const FeatureMap& x, const FeatureMap& y) {
  if (x.dims() != y.dims())
    throw ShapeError("cosine_distance requires equal dims, got " +
                     x.dims().to_string() + " vs " + y.dims().to_string());
  const Dims& d = x.dims();
  double sum_cos = 0.0;
  for (Eigen::Index b = 0; b < d.b; ++b)
    for (Eigen::Index h = 0; h < d.h; ++h)
      for (Eigen::Index w = 0; w < d.w; ++w) {
        double dot = 0.0, nx = 0.0, ny = 0.0;
        for (Eigen::Index c = 0; c < d.c; ++c) {
          const double xv = x(b, c, h, w);
          const double yv = y(b, c, h, w);
          dot += xv * yv;
          nx += xv * xv;
          ny += yv * yv;
        }
        if (nx == 0.0 || ny == 0.0) throw DegeneratePixelError(b, h, w);
        sum_cos += dot / (std::sqrt(nx) * std::sqrt(ny));
      }
  const double n = static_cast<double>(d.b * d.h * d.w);
  return 1.0 - sum_cos / n;
}

Displacement sample_displacement(TransformGroup group, Eigen::Index H,
                                 Eigen::Index W, Rng& rng) {
  if (group == TransformGroup::shift)
    return Displacement::shift(static_cast<long>(rng.uniform_index(H)),
                               static_cast<long>(rng.uniform_index(W)));
  return Displacement::translation(rng.uniform() * static_cast<double>(H),
                                   rng.uniform() * static_cast<double>(W));
}

namespace {

InitScheme pick_scheme(SchemeMix mix, Rng& rng) {
  switch (mix) {
    case SchemeMix::defaults: return InitScheme::defaults;
    case SchemeMix::gaussian: return InitScheme::gaussian;
    default: return rng.uniform() < 0.5 ? InitScheme::defaults : InitScheme::gaussian;
  }
}

Mode pick_mode(ModeMix mix, double training_fraction, Rng& rng) {
  switch (mix) {
    case ModeMix::training: return Mode::training;
    case ModeMix::evaluation: return Mode::evaluation;
    default: return rng.uniform() < training_fraction ? Mode::training : Mode::evaluation;
  }
}

RunningStats draw_running_stats(Eigen::Index channels, Rng& rng) {
  RunningStats s;
  s.mean = Eigen::ArrayXd(channels);
  s.var = Eigen::ArrayXd(channels);
  for (Eigen::Index c = 0; c < channels; ++c) s.mean[c] = rng.normal();
  for (Eigen::Index c = 0; c < channels; ++c) s.var[c] = 0.5 + rng.uniform();
  return s;
}

}  // namespace

ReportCell equivariance_error(const NormConfig& cfg,
                              const std::vector<FeatureMap>& maps,
                              const TrialPlan& plan) {
  if (maps.empty()) throw Error("equivariance_error needs at least one feature map");
  if (plan.n_trials < 1) throw Error("n_trials must be >= 1");

  const Rng base(plan.seed);
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < plan.n_trials; ++t) {
    Rng rng = base.fork(static_cast<std::uint64_t>(t));
    const FeatureMap& x = maps[rng.uniform_index(static_cast<Eigen::Index>(maps.size()))];
    const InitScheme scheme = pick_scheme(plan.schemes, rng);
    const AffineParams params = init_params(cfg, x.dims(), scheme, rng);

    NormConfig trial_cfg = cfg;
    RunningStats drawn;
    if (cfg.track_running_stats) {
      trial_cfg.mode = pick_mode(plan.bn_modes, plan.training_fraction, rng);
      drawn = draw_running_stats(x.dims().c, rng);
    }
    const Displacement g = sample_displacement(plan.group, x.dims().h, x.dims().w, rng);

    try {
      RunningStats lhs_state = drawn;
      RunningStats rhs_state = drawn;
      const FeatureMap lhs = normalize(apply_displacement(x, g), trial_cfg, params,
                                       cfg.track_running_stats ? &lhs_state : nullptr);
      const FeatureMap rhs = apply_displacement(
          normalize(x, trial_cfg, params, cfg.track_running_stats ? &rhs_state : nullptr),
          g);
      const double dist = cosine_distance(lhs, rhs);
      sum += dist;
      sum_sq += dist * dist;
    } catch (const Error& e) {
      throw Error("trial " + std::to_string(t) + ": " + e.what());
    }
  }

  ReportCell cell;
  cell.trials = plan.n_trials;
  const double n = static_cast<double>(plan.n_trials);
  cell.mean = sum / n;
  if (plan.n_trials > 1) {
    const double var = std::max(0.0, (sum_sq - n * cell.mean * cell.mean) / (n - 1.0));
    cell.std_error = std::sqrt(var / n);
  }
  return cell;
}

}  // namespace equinorm
