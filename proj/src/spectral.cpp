#include "equinorm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "equinorm/dft.hpp"
#include "equinorm/transform.hpp"

namespace equinorm {

namespace {

// sqrt(2)/4 must be the rounding of the exact band edge so that corner cells
// of upsampled maps, whose radius computes to sqrt(0.125), compare equal to
// it and stay out of the band.
const double kBandLow = std::sqrt(2.0) / 4.0;
constexpr double kBandHigh = 0.5;

// Index of the bin covering radius r under the (lo, hi] convention, with
// bin 0 additionally covering r = 0.
Eigen::Index bin_of(const Eigen::ArrayXd& edges, double r) {
  const double* begin = edges.data();
  const double* end = begin + edges.size();
  const double* it = std::lower_bound(begin + 1, end, r);
  Eigen::Index idx = static_cast<Eigen::Index>(it - begin) - 1;
  return std::min(idx, static_cast<Eigen::Index>(edges.size()) - 2);
}

Eigen::Index edge_index(const Eigen::ArrayXd& edges, double value) {
  for (Eigen::Index i = 0; i < edges.size(); ++i)
    if (std::abs(edges[i] - value) <= 1e-12) return i;
  throw MisalignedBinsError("PSD bin edges miss the required boundary " +
                            std::to_string(value));
}

}  // namespace

Eigen::ArrayXd psd_bin_edges(int n_bins) {
  if (n_bins < 2) throw std::invalid_argument("psd_bin_edges needs n_bins >= 2");
  const double rmax = std::sqrt(2.0) / 2.0;
  const double len1 = kBandLow, len2 = kBandHigh - kBandLow, len3 = rmax - kBandHigh;

  int n1 = std::max(1, static_cast<int>(std::lround(n_bins * len1 / rmax)));
  int n2 = std::max(1, static_cast<int>(std::lround(n_bins * len2 / rmax)));
  int n3 = std::max(1, n_bins - n1 - n2);

  Eigen::ArrayXd edges(n1 + n2 + n3 + 1);
  Eigen::Index e = 0;
  for (int i = 0; i < n1; ++i) edges[e++] = kBandLow * i / n1;
  for (int i = 0; i < n2; ++i) edges[e++] = kBandLow + len2 * i / n2;
  for (int i = 0; i < n3; ++i) edges[e++] = kBandHigh + len3 * i / n3;
  edges[e] = rmax;
  return edges;
}

RadialPsd radial_psd(const std::vector<FeatureMap>& maps, int n_bins) {
  if (maps.empty()) throw Error("radial_psd needs at least one map");
  const Eigen::Index H = maps.front().dims().h;
  const Eigen::Index W = maps.front().dims().w;
  for (const FeatureMap& m : maps)
    if (m.dims().h != H || m.dims().w != W)
      throw ShapeError("radial_psd requires maps of equal spatial size");

  const Eigen::ArrayXd edges = psd_bin_edges(n_bins);
  const Eigen::Index nb = edges.size() - 1;

  // Cell -> bin assignment is shared by every slice.
  Eigen::ArrayXXi bins(H, W);
  for (Eigen::Index kh = 0; kh < H; ++kh)
    for (Eigen::Index kw = 0; kw < W; ++kw) {
      const double fh = static_cast<double>(symmetric_frequency(kh, H)) / static_cast<double>(H);
      const double fw = static_cast<double>(symmetric_frequency(kw, W)) / static_cast<double>(W);
      bins(kh, kw) = static_cast<int>(bin_of(edges, std::sqrt(fh * fh + fw * fw)));
    }

  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(nb);
  Eigen::ArrayXd counts = Eigen::ArrayXd::Zero(nb);
  const double cell_norm = static_cast<double>(H * W);
  for (const FeatureMap& m : maps)
    for (Eigen::Index b = 0; b < m.dims().b; ++b)
      for (Eigen::Index c = 0; c < m.dims().c; ++c) {
        const Eigen::ArrayXXcd spec = dft2(Eigen::ArrayXXd(m.slice(b, c)));
        for (Eigen::Index kh = 0; kh < H; ++kh)
          for (Eigen::Index kw = 0; kw < W; ++kw) {
            sum[bins(kh, kw)] += std::norm(spec(kh, kw)) / cell_norm;
            counts[bins(kh, kw)] += 1.0;
          }
      }

  RadialPsd psd;
  psd.edges = edges;
  psd.counts = counts;
  psd.power = (counts > 0.0).select(sum / counts.max(1.0), Eigen::ArrayXd::Zero(nb));
  return psd;
}

double aliasing_energy(const RadialPsd& psd) {
  const Eigen::Index lo = edge_index(psd.edges, kBandLow);
  const Eigen::Index hi = edge_index(psd.edges, kBandHigh);
  double energy = 0.0;
  for (Eigen::Index j = lo; j < hi; ++j) energy += psd.power[j] * psd.counts[j];
  return energy;
}

double total_energy(const RadialPsd& psd) {
  return (psd.power * psd.counts).sum();
}

AliasingProbe aliasing_probe(const NormConfig& cfg, const AffineParams& params,
                             const std::vector<FeatureMap>& maps, int n_bins) {
  if (cfg.affine_axes.has_value() && cfg.affine_axes->intersects(kSpatialAxes))
    throw std::invalid_argument(
        "aliasing_probe targets shift-equivariant layers; the affine step must "
        "not operate on the spatial axes");

  NormConfig run_cfg = cfg;
  if (run_cfg.track_running_stats) run_cfg.mode = Mode::training;

  std::vector<FeatureMap> normalized;
  normalized.reserve(maps.size());
  for (const FeatureMap& m : maps) {
    const FeatureMap up = upsample2x_sinc(m);
    if (run_cfg.track_running_stats) {
      RunningStats state = RunningStats::identity(up.dims().c);
      normalized.push_back(normalize(up, run_cfg, params, &state));
    } else {
      normalized.push_back(normalize(up, run_cfg, params));
    }
  }

  AliasingProbe probe;
  probe.psd = radial_psd(normalized, n_bins);
  probe.band_energy = aliasing_energy(probe.psd);
  probe.total = total_energy(probe.psd);
  probe.energy_ratio = probe.total > 0.0 ? probe.band_energy / probe.total : 0.0;
  return probe;
}

}  // namespace equinorm
