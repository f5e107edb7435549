#include <doctest.h>

#include "equinorm/feature_map.hpp"
#include "oracles.hpp"

using namespace equinorm;

namespace {

double rel_diff(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

}  // namespace

TEST_SUITE("tensor") {

TEST_CASE("mean of a constant map over all axes is the constant") {
  const FeatureMap x = FeatureMap::constant({2, 3, 4, 5}, 3.0);
  const ReducedStat m = mean_over(x, AxisSet::all());
  CHECK(m.dims() == Dims{1, 1, 1, 1});
  CHECK(m(0, 0, 0, 0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("two-point channel mean and biased variance") {
  FeatureMap x = FeatureMap::zeros({1, 2, 1, 1});
  x(0, 0, 0, 0) = 1.0;
  x(0, 1, 0, 0) = 3.0;
  CHECK(mean_over(x, {Axis::C})(0, 0, 0, 0) == 2.0);
  CHECK(var_over(x, {Axis::C})(0, 0, 0, 0) == 1.0);
}

TEST_CASE("constant map has zero variance over any non-empty axes") {
  const FeatureMap x = FeatureMap::constant({2, 2, 3, 3}, -1.5);
  for (unsigned mask = 1; mask < 16; ++mask)
    CHECK(var_over(x, AxisSet::from_mask(mask)).data().abs().maxCoeff() == 0.0);
}

TEST_CASE("random map reductions match the naive-loop oracle") {
  const FeatureMap x = oracles::random_map({2, 3, 4, 5}, 42);
  for (unsigned mask = 0; mask < 16; ++mask) {
    const AxisSet axes = AxisSet::from_mask(mask);
    const ReducedStat m = mean_over(x, axes), mo = oracles::naive_mean(x, axes);
    const ReducedStat v = var_over(x, axes), vo = oracles::naive_var(x, axes);
    CHECK((m.data() - mo.data()).abs().maxCoeff() < 1e-14);
    CHECK((v.data() - vo.data()).abs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("oracle agreement on every shape with extents up to 4") {
  int shape_seed = 0;
  for (Eigen::Index b = 1; b <= 4; ++b)
    for (Eigen::Index c = 1; c <= 4; ++c)
      for (Eigen::Index h = 1; h <= 4; ++h)
        for (Eigen::Index w = 1; w <= 4; ++w) {
          const FeatureMap x = oracles::random_map({b, c, h, w}, 1000 + shape_seed++);
          for (unsigned mask = 0; mask < 16; ++mask) {
            const AxisSet axes = AxisSet::from_mask(mask);
            const ReducedStat m = mean_over(x, axes), mo = oracles::naive_mean(x, axes);
            const ReducedStat v = var_over(x, axes), vo = oracles::naive_var(x, axes);
            for (Eigen::Index i = 0; i < m.size(); ++i) {
              REQUIRE(rel_diff(m.data()[i], mo.data()[i]) < 1e-13);
              REQUIRE(rel_diff(v.data()[i], vo.data()[i]) < 1e-13);
            }
          }
        }
}

TEST_CASE("variance equals the mean of squared deviations") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FeatureMap x = oracles::random_map({2, 3, 5, 4}, 77 + seed);
    const AxisSet axes = AxisSet::from_mask(1 + static_cast<unsigned>(seed) % 15);
    const FeatureMap centered = broadcast_combine(x, mean_over(x, axes), BinaryOp::sub);
    const FeatureMap squared(centered.dims(), centered.data().square());
    const ReducedStat lhs = var_over(x, axes);
    const ReducedStat rhs = mean_over(squared, axes);
    CHECK((lhs.data() - rhs.data()).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("mean over the empty set is the identity, bit for bit") {
  const FeatureMap x = oracles::random_map({3, 2, 4, 3}, 5);
  const ReducedStat m = mean_over(x, AxisSet{});
  CHECK(m.dims() == x.dims());
  CHECK((m.data() == x.data()).all());
}

TEST_CASE("centering kills the mean") {
  const FeatureMap x = oracles::random_map({2, 4, 6, 6}, 9);
  for (unsigned mask = 1; mask < 16; ++mask) {
    const AxisSet axes = AxisSet::from_mask(mask);
    const FeatureMap centered = broadcast_combine(x, mean_over(x, axes), BinaryOp::sub);
    CHECK(mean_over(centered, axes).data().abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("division by a statistic of ones is the identity") {
  const FeatureMap x = oracles::random_map({2, 2, 3, 3}, 11);
  const ReducedStat ones = FeatureMap::constant({1, 2, 1, 1}, 1.0);
  const FeatureMap y = broadcast_combine(x, ones, BinaryOp::div);
  CHECK((y.data() == x.data()).all());
}

TEST_CASE("division by a zero statistic entry reports the offending index") {
  const FeatureMap x = FeatureMap::constant({1, 3, 1, 1}, 1.0);
  FeatureMap s = FeatureMap::constant({1, 3, 1, 1}, 2.0);
  s(0, 2, 0, 0) = 0.0;
  CHECK_THROWS_AS(broadcast_combine(x, s, BinaryOp::div), DivideByZeroError);
  try {
    broadcast_combine(x, s, BinaryOp::div);
  } catch (const DivideByZeroError& e) {
    CHECK(e.index == Coord4{0, 2, 0, 0});
  }
}

TEST_CASE("construction rejects invariant violations") {
  CHECK_THROWS_AS(FeatureMap({0, 1, 1, 1}, Eigen::ArrayXd::Zero(0)), ShapeError);
  CHECK_THROWS_AS(FeatureMap({1, 1, 1, 2}, Eigen::ArrayXd::Zero(3)), ShapeError);
  Eigen::ArrayXd bad = Eigen::ArrayXd::Zero(2);
  bad[1] = std::nan("");
  CHECK_THROWS_AS(FeatureMap({1, 1, 1, 2}, bad), ShapeError);
  bad[1] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(FeatureMap({1, 1, 1, 2}, bad), ShapeError);
}

TEST_CASE("incompatible statistic shapes are rejected") {
  const FeatureMap x = FeatureMap::constant({2, 3, 4, 4}, 1.0);
  const ReducedStat s = FeatureMap::constant({2, 2, 1, 1}, 1.0);
  CHECK_THROWS_AS(broadcast_combine(x, s, BinaryOp::add), ShapeError);
}

TEST_CASE("broadcast arithmetic agrees with explicit replication") {
  const FeatureMap x = oracles::random_map({2, 3, 2, 2}, 21);
  const ReducedStat s = mean_over(x, {Axis::B, Axis::W});
  const FeatureMap sum = broadcast_combine(x, s, BinaryOp::add);
  const FeatureMap prod = broadcast_combine(x, s, BinaryOp::mul);
  const Dims& d = x.dims();
  for (Eigen::Index b = 0; b < d.b; ++b)
    for (Eigen::Index c = 0; c < d.c; ++c)
      for (Eigen::Index h = 0; h < d.h; ++h)
        for (Eigen::Index w = 0; w < d.w; ++w) {
          CHECK(sum(b, c, h, w) == x(b, c, h, w) + s(0, c, h, 0));
          CHECK(prod(b, c, h, w) == x(b, c, h, w) * s(0, c, h, 0));
        }
}

}  // TEST_SUITE
