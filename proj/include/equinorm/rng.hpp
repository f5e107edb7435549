#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>

namespace equinorm {

// Deterministic random source. The engine is the standardized mt19937_64 and
// all variate transforms are hand-rolled, so a given seed produces the same
// stream on every platform. `fork` derives an independent substream from the
// base seed, which keeps parallel consumers reproducible regardless of how
// much the parent has drawn.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller on two fresh uniforms.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // Uniform integer in [0, n).
  Eigen::Index uniform_index(Eigen::Index n) {
    Eigen::Index i = static_cast<Eigen::Index>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  Rng fork(std::uint64_t stream) const { return Rng(mix(seed_, stream)); }

 private:
  // splitmix64 finalizer over the (seed, stream) pair.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace equinorm
