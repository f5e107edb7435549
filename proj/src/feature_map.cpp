#include "equinorm/feature_map.hpp"

#include <utility>

namespace equinorm {

FeatureMap::FeatureMap(Dims dims, Eigen::ArrayXd data)
    : dims_(dims), data_(std::move(data)) {
  if (dims_.b <= 0 || dims_.c <= 0 || dims_.h <= 0 || dims_.w <= 0)
    throw ShapeError("FeatureMap dims must be positive, got " + dims_.to_string());
  if (data_.size() != dims_.count())
    throw ShapeError("FeatureMap data length " + std::to_string(data_.size()) +
                     " does not match dims " + dims_.to_string());
  if (!data_.isFinite().all())
    throw ShapeError("FeatureMap entries must be finite");
}

FeatureMap FeatureMap::zeros(Dims dims) {
  return FeatureMap(dims, Eigen::ArrayXd::Zero(dims.count()));
}

FeatureMap FeatureMap::constant(Dims dims, double value) {
  return FeatureMap(dims, Eigen::ArrayXd::Constant(dims.count(), value));
}

Dims reduced_dims(const Dims& d, AxisSet axes) {
  Dims r = d;
  for (Axis a : {Axis::B, Axis::C, Axis::H, Axis::W})
    if (axes.has(a)) r.extent(a) = 1;
  return r;
}

namespace {

// Visits every entry of x paired with the broadcast-matched entry of a
// reduced tensor, in fixed (b, c, h, w) order so sums are reproducible.
template <typename Fn>
void for_each_broadcast(const Dims& xd, const Dims& sd, Fn&& fn) {
  const Eigen::Index sb = sd.b == 1 ? 0 : 1;
  const Eigen::Index sc = sd.c == 1 ? 0 : 1;
  const Eigen::Index sh = sd.h == 1 ? 0 : 1;
  const Eigen::Index sw = sd.w == 1 ? 0 : 1;
  Eigen::Index xi = 0;
  for (Eigen::Index b = 0; b < xd.b; ++b) {
    const Eigen::Index ob = (sb * b) * sd.c;
    for (Eigen::Index c = 0; c < xd.c; ++c) {
      const Eigen::Index oc = (ob + sc * c) * sd.h;
      for (Eigen::Index h = 0; h < xd.h; ++h) {
        const Eigen::Index oh = (oc + sh * h) * sd.w;
        for (Eigen::Index w = 0; w < xd.w; ++w, ++xi) {
          fn(xi, oh + sw * w, b, c, h, w);
        }
      }
    }
  }
}

void check_broadcastable(const Dims& xd, const Dims& sd) {
  for (Axis a : {Axis::B, Axis::C, Axis::H, Axis::W}) {
    const Eigen::Index e = sd.extent(a);
    if (e != 1 && e != xd.extent(a))
      throw ShapeError("statistic dims " + sd.to_string() +
                       " not broadcast-compatible with " + xd.to_string());
  }
}

Coord4 stat_coords(const Dims& sd, Eigen::Index b, Eigen::Index c, Eigen::Index h,
                   Eigen::Index w) {
  return {sd.b == 1 ? 0 : b, sd.c == 1 ? 0 : c, sd.h == 1 ? 0 : h, sd.w == 1 ? 0 : w};
}

}  // namespace

ReducedStat mean_over(const FeatureMap& x, AxisSet axes) {
  const Dims& d = x.dims();
  const Dims rd = reduced_dims(d, axes);
  const double n = static_cast<double>(d.count() / rd.count());
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(rd.count());
  const Eigen::ArrayXd& src = x.data();
  for_each_broadcast(d, rd, [&](Eigen::Index xi, Eigen::Index si, Eigen::Index,
                                Eigen::Index, Eigen::Index, Eigen::Index) {
    acc[si] += src[xi];
  });
  acc /= n;
  return ReducedStat(rd, std::move(acc));
}

ReducedStat var_over(const FeatureMap& x, AxisSet axes) {
  const Dims& d = x.dims();
  const Dims rd = reduced_dims(d, axes);
  const double n = static_cast<double>(d.count() / rd.count());
  const ReducedStat mu = mean_over(x, axes);
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(rd.count());
  const Eigen::ArrayXd& src = x.data();
  const Eigen::ArrayXd& m = mu.data();
  for_each_broadcast(d, rd, [&](Eigen::Index xi, Eigen::Index si, Eigen::Index,
                                Eigen::Index, Eigen::Index, Eigen::Index) {
    const double dev = src[xi] - m[si];
    acc[si] += dev * dev;
  });
  acc /= n;
  return ReducedStat(rd, std::move(acc));
}

FeatureMap broadcast_combine(const FeatureMap& x, const ReducedStat& s, BinaryOp op) {
  const Dims& xd = x.dims();
  const Dims& sd = s.dims();
  check_broadcastable(xd, sd);
  Eigen::ArrayXd out(xd.count());
  const Eigen::ArrayXd& a = x.data();
  const Eigen::ArrayXd& b = s.data();
  switch (op) {
    case BinaryOp::add:
      for_each_broadcast(xd, sd, [&](Eigen::Index xi, Eigen::Index si, Eigen::Index,
                                     Eigen::Index, Eigen::Index, Eigen::Index) {
        out[xi] = a[xi] + b[si];
      });
      break;
    case BinaryOp::sub:
      for_each_broadcast(xd, sd, [&](Eigen::Index xi, Eigen::Index si, Eigen::Index,
                                     Eigen::Index, Eigen::Index, Eigen::Index) {
        out[xi] = a[xi] - b[si];
      });
      break;
    case BinaryOp::mul:
      for_each_broadcast(xd, sd, [&](Eigen::Index xi, Eigen::Index si, Eigen::Index,
                                     Eigen::Index, Eigen::Index, Eigen::Index) {
        out[xi] = a[xi] * b[si];
      });
      break;
    case BinaryOp::div:
      for_each_broadcast(xd, sd, [&](Eigen::Index xi, Eigen::Index si, Eigen::Index bb,
                                     Eigen::Index cc, Eigen::Index hh, Eigen::Index ww) {
        if (b[si] == 0.0) throw DivideByZeroError(stat_coords(sd, bb, cc, hh, ww));
        out[xi] = a[xi] / b[si];
      });
      break;
  }
  return FeatureMap(xd, std::move(out));
}

}  // namespace equinorm
