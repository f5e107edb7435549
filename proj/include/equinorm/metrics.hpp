#pragma once

#include <cstdint>
#include <vector>

#include "equinorm/feature_map.hpp"
#include "equinorm/norm.hpp"
#include "equinorm/rng.hpp"
#include "equinorm/transform.hpp"

namespace equinorm {

enum class TransformGroup { shift, translation };

const char* group_name(TransformGroup g);

enum class SchemeMix { defaults, gaussian, both };
enum class ModeMix { training, evaluation, both };

// Sampling protocol for one Monte-Carlo estimate: which transform group,
// how the affine parameters and (for batch-statistics layers) the mode are
// drawn, and the seed that makes the whole estimate reproducible.
struct TrialPlan {
  TransformGroup group = TransformGroup::shift;
  int n_trials = 64;
  SchemeMix schemes = SchemeMix::both;
  ModeMix bn_modes = ModeMix::both;
  double training_fraction = 0.5;  // mode mix when bn_modes == both
  std::uint64_t seed = 0;
};

// One cell of an equivariance report: mean error with its standard error
// (sample std / sqrt(n)) over `trials` Monte-Carlo trials.
struct ReportCell {
  double mean = 0.0;
  double std_error = 0.0;
  long trials = 0;
};

// One minus the mean per-pixel channel-wise cosine similarity; range [0, 2].
// A zero-norm channel vector in either map raises DegeneratePixelError.
double cosine_distance(const FeatureMap& x, const FeatureMap& y);

// Uniform over {0..H-1} x {0..W-1} for shifts, over [0,H) x [0,W) for
// translations.
Displacement sample_displacement(TransformGroup group, Eigen::Index H,
                                 Eigen::Index W, Rng& rng);

// Monte-Carlo estimate of E[d(f(T_g x), T_g f(x))] over maps, parameters,
// displacements and (when applicable) modes, per the plan. Within a trial the
// same parameter and running-stats draws are used on both sides. Two runs
// with the same plan and maps produce bit-identical cells.
ReportCell equivariance_error(const NormConfig& cfg,
                              const std::vector<FeatureMap>& maps,
                              const TrialPlan& plan);

}  // namespace equinorm
