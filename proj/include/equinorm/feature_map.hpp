#pragma once

#include <Eigen/Core>
#include <string>

#include "equinorm/axes.hpp"
#include "equinorm/errors.hpp"

namespace equinorm {

struct Dims {
  Eigen::Index b = 0, c = 0, h = 0, w = 0;

  constexpr Eigen::Index count() const { return b * c * h * w; }

  constexpr Eigen::Index extent(Axis a) const {
    switch (a) {
      case Axis::B: return b;
      case Axis::C: return c;
      case Axis::H: return h;
      default: return w;
    }
  }
  Eigen::Index& extent(Axis a) {
    switch (a) {
      case Axis::B: return b;
      case Axis::C: return c;
      case Axis::H: return h;
      default: return w;
    }
  }

  friend constexpr bool operator==(const Dims&, const Dims&) = default;

  std::string to_string() const {
    return std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(h) +
           "," + std::to_string(w);
  }
};

// Dense (B, C, H, W) feature map of doubles, C-order with w fastest.
// Invariants: all dims positive, data length == B*C*H*W, every entry finite.
class FeatureMap {
 public:
  FeatureMap(Dims dims, Eigen::ArrayXd data);

  static FeatureMap zeros(Dims dims);
  static FeatureMap constant(Dims dims, double value);

  const Dims& dims() const { return dims_; }
  Eigen::Index size() const { return data_.size(); }

  Eigen::Index offset(Eigen::Index b, Eigen::Index c, Eigen::Index h,
                      Eigen::Index w) const {
    return ((b * dims_.c + c) * dims_.h + h) * dims_.w + w;
  }

  double operator()(Eigen::Index b, Eigen::Index c, Eigen::Index h,
                    Eigen::Index w) const {
    return data_[offset(b, c, h, w)];
  }
  double& operator()(Eigen::Index b, Eigen::Index c, Eigen::Index h, Eigen::Index w) {
    return data_[offset(b, c, h, w)];
  }

  const Eigen::ArrayXd& data() const { return data_; }
  Eigen::ArrayXd& data() { return data_; }

  using RowMajorArray = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using SliceMap = Eigen::Map<RowMajorArray>;
  using ConstSliceMap = Eigen::Map<const RowMajorArray>;

  // One (b, c) plane viewed as an H x W array; contiguous by the C-order layout.
  SliceMap slice(Eigen::Index b, Eigen::Index c) {
    return SliceMap(data_.data() + offset(b, c, 0, 0), dims_.h, dims_.w);
  }
  ConstSliceMap slice(Eigen::Index b, Eigen::Index c) const {
    return ConstSliceMap(data_.data() + offset(b, c, 0, 0), dims_.h, dims_.w);
  }

 private:
  Dims dims_;
  Eigen::ArrayXd data_;
};

// A statistic reduced over some AxisSet: size 1 along every reduced axis,
// unchanged along the others; broadcast-compatible with its source map.
using ReducedStat = FeatureMap;

enum class BinaryOp { add, sub, mul, div };

Dims reduced_dims(const Dims& d, AxisSet axes);

// Arithmetic mean over `axes` at fixed remaining indices. Empty axes: the
// result equals x exactly.
ReducedStat mean_over(const FeatureMap& x, AxisSet axes);

// Biased variance (divide by the reduction count) over `axes`, computed in a
// two-pass scheme: mean first, then squared deviations.
ReducedStat var_over(const FeatureMap& x, AxisSet axes);

// Entry-wise combination of x with s replicated along the reduced axes.
// For div, a zero entry of s raises DivideByZeroError with its index.
FeatureMap broadcast_combine(const FeatureMap& x, const ReducedStat& s, BinaryOp op);

}  // namespace equinorm
