#include <doctest.h>

#include <cmath>

#include "equinorm/spectral.hpp"
#include "equinorm/synthetic.hpp"
#include "equinorm/transform.hpp"
#include "oracles.hpp"

using namespace equinorm;

namespace {

Eigen::Index bin_containing(const RadialPsd& psd, double r) {
  for (Eigen::Index j = 0; j < psd.bins(); ++j)
    if (r > psd.edges[j] && r <= psd.edges[j + 1]) return j;
  return 0;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("bin edges are increasing and include both band boundaries") {
  for (int n : {3, 16, 64, 101}) {
    const Eigen::ArrayXd edges = psd_bin_edges(n);
    for (Eigen::Index i = 0; i + 1 < edges.size(); ++i) CHECK(edges[i] < edges[i + 1]);
    CHECK(edges[0] == 0.0);
    bool has_lo = false, has_hi = false;
    for (Eigen::Index i = 0; i < edges.size(); ++i) {
      if (std::abs(edges[i] - std::sqrt(2.0) / 4.0) < 1e-15) has_lo = true;
      if (edges[i] == 0.5) has_hi = true;
    }
    CHECK(has_lo);
    CHECK(has_hi);
  }
  CHECK_THROWS_AS(psd_bin_edges(1), std::invalid_argument);
}

TEST_CASE("a constant map concentrates all power in the DC bin") {
  const Eigen::Index H = 8, W = 8;
  const std::vector<FeatureMap> maps = {FeatureMap::constant({1, 1, H, W}, 1.0)};
  const RadialPsd psd = radial_psd(maps, 16);
  CHECK(psd.power[0] * psd.counts[0] ==
        doctest::Approx(static_cast<double>(H * W)).epsilon(1e-12));
  for (Eigen::Index j = 1; j < psd.bins(); ++j) CHECK(psd.power[j] < 1e-20);
}

TEST_CASE("a pure tone lands in exactly one bin") {
  const Eigen::Index H = 8, W = 16;
  FeatureMap x = FeatureMap::zeros({1, 1, H, W});
  for (Eigen::Index h = 0; h < H; ++h)
    for (Eigen::Index w = 0; w < W; ++w)
      x(0, 0, h, w) = std::cos(2.0 * M_PI * static_cast<double>(w) / 4.0);
  const RadialPsd psd = radial_psd({x}, 32);
  const Eigen::Index tone_bin = bin_containing(psd, 0.25);
  for (Eigen::Index j = 0; j < psd.bins(); ++j) {
    if (j == tone_bin)
      CHECK(psd.power[j] > 0.0);
    else
      CHECK(psd.power[j] < 1e-20);
  }
}

TEST_CASE("white noise has an approximately flat radial PSD") {
  const std::vector<FeatureMap> maps = gen_maps({4, 4, 32, 32}, 4, MapSpectrum::white(), 5);
  const RadialPsd psd = radial_psd(maps, 24);
  double lo = 1e300, hi = 0.0;
  for (Eigen::Index j = 0; j < psd.bins(); ++j) {
    if (psd.counts[j] < 50.0 * 4 * 16) continue;  // skip sparsely populated bins
    lo = std::min(lo, psd.power[j]);
    hi = std::max(hi, psd.power[j]);
  }
  CHECK(hi / lo < 3.0);
}

TEST_CASE("total PSD power satisfies Parseval") {
  const std::vector<FeatureMap> maps = gen_maps({2, 3, 12, 10}, 3, MapSpectrum::white(), 6);
  const RadialPsd psd = radial_psd(maps, 20);
  double energy = 0.0;
  for (const FeatureMap& m : maps) energy += m.data().square().sum();
  CHECK(total_energy(psd) == doctest::Approx(energy).epsilon(1e-10));
}

TEST_CASE("the radial PSD is shift-invariant") {
  const FeatureMap x = oracles::random_map({1, 2, 16, 16}, 7);
  const RadialPsd a = radial_psd({x}, 32);
  const RadialPsd b = radial_psd({shift2d(x, 5, 11)}, 32);
  CHECK((a.power - b.power).abs().maxCoeff() < 1e-12);
}

TEST_CASE("mixed spatial sizes are rejected") {
  const FeatureMap a = FeatureMap::constant({1, 1, 4, 4}, 1.0);
  const FeatureMap b = FeatureMap::constant({1, 1, 4, 6}, 1.0);
  CHECK_THROWS_AS(radial_psd({a, b}, 8), ShapeError);
}

TEST_CASE("aliasing energy of an all-zero PSD is zero") {
  RadialPsd psd;
  psd.edges = psd_bin_edges(16);
  psd.power = Eigen::ArrayXd::Zero(psd.edges.size() - 1);
  psd.counts = Eigen::ArrayXd::Ones(psd.edges.size() - 1);
  CHECK(aliasing_energy(psd) == 0.0);
}

TEST_CASE("aliasing energy rejects misaligned bins") {
  RadialPsd psd;
  psd.edges = Eigen::ArrayXd::LinSpaced(9, 0.0, std::sqrt(2.0) / 2.0);
  psd.power = Eigen::ArrayXd::Zero(8);
  psd.counts = Eigen::ArrayXd::Ones(8);
  CHECK_THROWS_AS(aliasing_energy(psd), MisalignedBinsError);
}

TEST_CASE("a tone at radius 0.45 contributes its full power to the band") {
  const Eigen::Index H = 20, W = 16;
  FeatureMap x = FeatureMap::zeros({1, 1, H, W});
  for (Eigen::Index h = 0; h < H; ++h)
    for (Eigen::Index w = 0; w < W; ++w)
      x(0, 0, h, w) = std::cos(2.0 * M_PI * 9.0 * static_cast<double>(h) / 20.0);
  const RadialPsd psd = radial_psd({x}, 32);
  CHECK(aliasing_energy(psd) == doctest::Approx(total_energy(psd)).epsilon(1e-12));
  CHECK(total_energy(psd) > 0.0);
}

TEST_CASE("upsampled maps carry no aliasing-band energy") {
  const std::vector<FeatureMap> maps = gen_maps({1, 2, 12, 12}, 2, MapSpectrum::white(), 8);
  std::vector<FeatureMap> up;
  for (const FeatureMap& m : maps) up.push_back(upsample2x_sinc(m));
  const RadialPsd psd = radial_psd(up, 64);
  CHECK(aliasing_energy(psd) <= 1e-18);
}

TEST_CASE("the probe separates translation-equivariant presets from LayerNorm-C") {
  const std::vector<FeatureMap> maps = gen_maps({2, 16, 16, 16}, 3, MapSpectrum::white(), 9);
  for (Preset p : {Preset::batch_norm, Preset::instance_norm, Preset::layer_norm_af}) {
    const NormConfig cfg = preset(p);
    const AffineParams params =
        init_params(cfg, {2, 16, 32, 32}, InitScheme::defaults, 0);
    const AliasingProbe probe = aliasing_probe(cfg, params, maps);
    CHECK(probe.energy_ratio < 1e-10);
  }
  const NormConfig lnc = preset(Preset::layer_norm_c);
  const AffineParams params = init_params(lnc, {2, 16, 32, 32}, InitScheme::defaults, 0);
  const AliasingProbe probe = aliasing_probe(lnc, params, maps);
  CHECK(probe.energy_ratio > 1e-6);
}

TEST_CASE("a pass-through layer adds no band energy") {
  const std::vector<FeatureMap> maps = gen_maps({1, 4, 12, 12}, 2, MapSpectrum::white(), 12);
  const NormConfig identity;  // both steps skipped, no affine
  const AliasingProbe probe = aliasing_probe(identity, AffineParams::none(), maps);
  CHECK(probe.band_energy <= 1e-18);
}

TEST_CASE("the probe rejects configs that are not shift-equivariant") {
  const std::vector<FeatureMap> maps = gen_maps({1, 4, 8, 8}, 1, MapSpectrum::white(), 10);
  const NormConfig cfg = preset(Preset::layer_norm_chw);
  const AffineParams params = init_params(cfg, {1, 4, 16, 16}, InitScheme::defaults, 0);
  CHECK_THROWS_AS(aliasing_probe(cfg, params, maps), std::invalid_argument);
}

}  // TEST_SUITE
