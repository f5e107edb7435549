#pragma once

#include <Eigen/Core>
#include <vector>

#include "equinorm/feature_map.hpp"
#include "equinorm/norm.hpp"

namespace equinorm {

// Radially averaged power spectral density over normalized frequency radius
// r in [0, sqrt(2)/2]. Bin j covers (edges[j], edges[j+1]] (bin 0 includes
// r = 0); counts are the number of (cell, slice) samples aggregated per bin.
struct RadialPsd {
  Eigen::ArrayXd edges;   // n_bins + 1, strictly increasing
  Eigen::ArrayXd power;   // per-bin mean of |X|^2 / (H*W)
  Eigen::ArrayXd counts;

  Eigen::Index bins() const { return power.size(); }
};

// Bin edges uniform in r within each of the three segments delimited by
// sqrt(2)/4 and 1/2, so both band boundaries are exact edges. `n_bins` is a
// target; at least one bin per segment is produced.
Eigen::ArrayXd psd_bin_edges(int n_bins);

// Mean power per radial bin over every (b, c) slice of every map. All maps
// must share (H, W).
RadialPsd radial_psd(const std::vector<FeatureMap>& maps, int n_bins = 64);

// Power * count summed over the bins between the sqrt(2)/4 and 1/2 edges.
// Raises MisalignedBinsError if the edges do not line up.
double aliasing_energy(const RadialPsd& psd);

// Power * count summed over every bin; Parseval ties this to the total
// squared signal energy.
double total_energy(const RadialPsd& psd);

struct AliasingProbe {
  RadialPsd psd;
  double band_energy = 0.0;
  double total = 0.0;
  double energy_ratio = 0.0;  // band_energy / total, the scale-free statistic
};

// Upsample x2 with the sinc filter, apply the layer, and measure the energy
// that appears in the (sqrt(2)/4, 1/2) band. Requires a shift-equivariant
// config (affine step off the spatial axes); batch-statistics layers are run
// in training mode so the actual batch statistics are exercised.
AliasingProbe aliasing_probe(const NormConfig& cfg, const AffineParams& params,
                             const std::vector<FeatureMap>& maps, int n_bins = 64);

}  // namespace equinorm
