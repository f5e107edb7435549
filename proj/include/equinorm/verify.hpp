#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "equinorm/feature_map.hpp"
#include "equinorm/norm.hpp"
#include "equinorm/transform.hpp"

namespace equinorm {

enum class EquivarianceClass { translation, shift, neither };

const char* class_name(EquivarianceClass c);

// Predicted equivariance of a normalization config:
//   - neither, if the affine step operates on a spatial axis;
//   - translation, if the scaling statistic covers both spatial axes or the
//     scaling step is skipped (empty scale axes divide by nothing);
//   - shift otherwise.
EquivarianceClass classify_config(const NormConfig& cfg);

// Max over all H*W integer displacements of the max-abs difference between
// f(T_g x) and T_g f(x). Intended for small maps.
double shift_equivariance_exhaustive(const NormConfig& cfg, const AffineParams& params,
                                     const FeatureMap& x);

// Direct O(K^2) circular convolution with translation_kernel(g, K); the
// independent oracle for the FFT path of translate1d.
Eigen::ArrayXXcd translate_naive(const Eigen::ArrayXXcd& v, double g);
Eigen::ArrayXXcd translate_naive(const Eigen::ArrayXXd& v, double g);

// |E[|T_g v|^2] - E[|v|^2]| with T_g the 1-D translation; zero up to roundoff
// because the DFT is unitary; exactly zero for integer g.
double unitarity_check(const Eigen::ArrayXXcd& v, double g);
double unitarity_check(const Eigen::ArrayXXd& v, double g);

// Executable form of the argument that a spatially varying affine step breaks
// shift equivariance, on the 1-D K x D model: gamma[k][d] = delta(k==0),
// beta = 0, x valued in {-1, +1} with both values on every row, statistics
// over the D columns, and a nonzero integer displacement. The error map is
// supported exactly on rows 0 and g.
struct ShiftCounterexample {
  Eigen::ArrayXXd error;         // f(T_g x) - T_g f(x)
  Eigen::ArrayXXd standardized;  // y = (x - mean_d) / std_d
  long g = 0;
  double max_abs = 0.0;
};
ShiftCounterexample shift_counterexample(Eigen::Index K, Eigen::Index D,
                                         std::uint64_t seed);

// Executable form of the argument that column-wise scaling breaks translation
// equivariance: x[k][d] = delta(k==0) * u[d] with u standardized over D,
// scaling over the columns, non-integer g. The measured error map equals
// phi[k] * (1/|phi[k]| - 1) * u[d] entry-wise.
struct TranslationCounterexample {
  Eigen::ArrayXXcd measured;
  Eigen::ArrayXXcd closed_form;
  double max_abs_diff = 0.0;
  double max_abs_error = 0.0;
};
TranslationCounterexample translation_counterexample(Eigen::Index K, Eigen::Index D,
                                                     double g, std::uint64_t seed);

struct SweepOptions {
  Dims dims{2, 3, 8, 8};
  int maps_per_config = 2;
  int translations_per_map = 4;
  double t_lo = 1e-8;   // measured error at or below: equivariant
  double t_hi = 1e-4;   // measured error at or above: not equivariant
  double lowpass_bandwidth = 0.375;
  std::uint64_t seed = 0;
};

struct SweepRow {
  AxisSet center_axes;
  AxisSet scale_axes;
  std::optional<AxisSet> affine_axes;
  EquivarianceClass predicted = EquivarianceClass::neither;
  double shift_error = 0.0;
  double translation_error = 0.0;
  std::optional<EquivarianceClass> measured;  // nullopt: indeterminate
  bool agreement = false;
};

// Measures every (center, scale, affine) configuration - 16 x 16 x 17 = 4352
// rows - on random low-pass maps with gaussian affine parameters and eps = 0,
// classifies the measured errors against (t_lo, t_hi), and compares with
// classify_config. Rows are independent, each with its own rng stream derived
// from (seed, row index).
std::vector<SweepRow> equivariance_sweep(const SweepOptions& opts);

}  // namespace equinorm
