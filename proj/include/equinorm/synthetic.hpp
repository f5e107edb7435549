#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "equinorm/feature_map.hpp"

namespace equinorm {

enum class SpectrumKind { white, lowpass };

// Spectral shape of synthetic feature maps. `lowpass` zeroes every DFT cell
// with normalized radial frequency strictly above `bandwidth`; bandwidth must
// lie in (0, 1/2]. Any bandwidth below 1/2 leaves the Nyquist rows/columns
// empty, which is what makes sub-pixel translation exactly unitary on the
// generated maps.
struct MapSpectrum {
  SpectrumKind kind = SpectrumKind::white;
  double bandwidth = 0.5;

  static MapSpectrum white() { return {SpectrumKind::white, 0.5}; }
  static MapSpectrum lowpass(double bandwidth) { return {SpectrumKind::lowpass, bandwidth}; }

  // "white" or "lowpass:0.375"
  static MapSpectrum parse(std::string_view text);
  std::string to_string() const;
};

// n i.i.d. standard-normal maps, optionally low-pass filtered; deterministic
// per seed.
std::vector<FeatureMap> gen_maps(const Dims& dims, int n, const MapSpectrum& spectrum,
                                 std::uint64_t seed);

FeatureMap lowpass_filter(const FeatureMap& x, double bandwidth);

}  // namespace equinorm
