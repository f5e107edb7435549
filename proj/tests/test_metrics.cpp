#include <doctest.h>

#include "equinorm/metrics.hpp"
#include "equinorm/synthetic.hpp"
#include "oracles.hpp"

using namespace equinorm;

TEST_SUITE("metrics") {

TEST_CASE("cosine distance of a map with itself is zero") {
  const FeatureMap x = oracles::random_map({2, 3, 4, 4}, 1);
  CHECK(std::abs(cosine_distance(x, x)) < 1e-15);
}

TEST_CASE("cosine distance of antipodal maps is two") {
  const FeatureMap x = oracles::random_map({2, 3, 4, 4}, 2);
  const FeatureMap neg(x.dims(), -x.data());
  CHECK(std::abs(cosine_distance(x, neg) - 2.0) < 1e-15);
}

TEST_CASE("cosine distance ignores positive scaling") {
  const FeatureMap x = oracles::random_map({2, 3, 4, 4}, 3);
  const FeatureMap scaled(x.dims(), 3.0 * x.data());
  CHECK(std::abs(cosine_distance(x, scaled)) < 1e-15);
}

TEST_CASE("a zero channel vector is a degenerate pixel") {
  FeatureMap x = oracles::random_map({1, 2, 2, 2}, 4);
  FeatureMap y = x;
  for (Eigen::Index c = 0; c < 2; ++c) y(0, c, 1, 0) = 0.0;
  CHECK_THROWS_AS(cosine_distance(x, y), DegeneratePixelError);
  try {
    cosine_distance(x, y);
  } catch (const DegeneratePixelError& e) {
    CHECK(e.b == 0);
    CHECK(e.h == 1);
    CHECK(e.w == 0);
  }
}

TEST_CASE("mismatched dims are rejected") {
  const FeatureMap x = oracles::random_map({1, 2, 2, 2}, 5);
  const FeatureMap y = oracles::random_map({1, 2, 2, 3}, 5);
  CHECK_THROWS_AS(cosine_distance(x, y), ShapeError);
}

TEST_CASE("shift displacements on a 1x1 grid are always zero") {
  Rng rng(6);
  for (int i = 0; i < 16; ++i) {
    const Displacement g = sample_displacement(TransformGroup::shift, 1, 1, rng);
    CHECK(g.dh == 0.0);
    CHECK(g.dw == 0.0);
    CHECK(g.integral);
  }
}

TEST_CASE("shift displacements cover the grid uniformly") {
  Rng rng(7);
  const int draws = 10000;
  Eigen::ArrayXXd freq = Eigen::ArrayXXd::Zero(4, 4);
  for (int i = 0; i < draws; ++i) {
    const Displacement g = sample_displacement(TransformGroup::shift, 4, 4, rng);
    freq(static_cast<Eigen::Index>(g.dh), static_cast<Eigen::Index>(g.dw)) += 1.0;
  }
  freq /= draws;
  CHECK((freq - 1.0 / 16.0).abs().maxCoeff() < 0.01);
}

TEST_CASE("translation displacements land in the half-open box") {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const Displacement g = sample_displacement(TransformGroup::translation, 6, 5, rng);
    CHECK(!g.integral);
    CHECK(g.dh >= 0.0);
    CHECK(g.dh < 6.0);
    CHECK(g.dw >= 0.0);
    CHECK(g.dw < 5.0);
  }
}

TEST_CASE("the identity layer is equivariant under both groups") {
  const NormConfig identity;  // center {}, scale {}, no affine
  const std::vector<FeatureMap> maps = gen_maps({2, 3, 8, 8}, 2, MapSpectrum::white(), 9);
  for (TransformGroup group : {TransformGroup::shift, TransformGroup::translation}) {
    TrialPlan plan;
    plan.group = group;
    plan.n_trials = 16;
    plan.seed = 10;
    const ReportCell cell = equivariance_error(identity, maps, plan);
    CHECK(cell.mean < 1e-11);
    CHECK(cell.trials == 16);
  }
}

TEST_CASE("LayerNorm-CHW fails shift equivariance with gaussian parameters") {
  const std::vector<FeatureMap> maps = gen_maps({2, 4, 8, 8}, 2, MapSpectrum::white(), 11);
  TrialPlan plan;
  plan.group = TransformGroup::shift;
  plan.n_trials = 32;
  plan.schemes = SchemeMix::gaussian;
  plan.seed = 12;
  const ReportCell cell = equivariance_error(preset(Preset::layer_norm_chw), maps, plan);
  CHECK(cell.mean > 1e-2);
}

TEST_CASE("BatchNorm is translation-equivariant on band-limited maps") {
  const std::vector<FeatureMap> maps =
      gen_maps({2, 4, 16, 16}, 2, MapSpectrum::lowpass(0.375), 13);
  TrialPlan plan;
  plan.group = TransformGroup::translation;
  plan.n_trials = 32;
  plan.seed = 14;
  const ReportCell cell = equivariance_error(preset(Preset::batch_norm), maps, plan);
  CHECK(cell.mean < 1e-10);
}

TEST_CASE("the estimator is deterministic given seed and maps") {
  const std::vector<FeatureMap> maps =
      gen_maps({2, 3, 8, 8}, 3, MapSpectrum::lowpass(0.375), 15);
  TrialPlan plan;
  plan.group = TransformGroup::translation;
  plan.n_trials = 24;
  plan.seed = 16;
  const NormConfig cfg = preset(Preset::layer_norm_c);
  const ReportCell a = equivariance_error(cfg, maps, plan);
  const ReportCell b = equivariance_error(cfg, maps, plan);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.trials == b.trials);
}

TEST_CASE("standard error follows the sample-std formula") {
  const std::vector<FeatureMap> maps = gen_maps({1, 3, 6, 6}, 2, MapSpectrum::white(), 17);
  TrialPlan plan;
  plan.group = TransformGroup::shift;
  plan.n_trials = 50;
  plan.schemes = SchemeMix::gaussian;
  plan.seed = 18;
  const ReportCell cell = equivariance_error(preset(Preset::layer_norm_chw), maps, plan);
  CHECK(cell.std_error > 0.0);
  CHECK(cell.std_error < cell.mean);  // 50 trials of O(1) distances
}

TEST_CASE("empty map lists are rejected") {
  TrialPlan plan;
  CHECK_THROWS_AS(equivariance_error(NormConfig{}, {}, plan), Error);
}

TEST_CASE("degenerate trials propagate with the trial index attached") {
  // A zero map passes through the identity config and then has zero-norm
  // channel vectors at every pixel.
  const std::vector<FeatureMap> maps = {FeatureMap::zeros({1, 2, 2, 2})};
  TrialPlan plan;
  plan.n_trials = 3;
  plan.seed = 19;
  try {
    equivariance_error(NormConfig{}, maps, plan);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).rfind("trial 0:", 0) == 0);
  }
}

}  // TEST_SUITE
