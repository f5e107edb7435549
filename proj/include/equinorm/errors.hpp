#pragma once

#include <Eigen/Core>
#include <array>
#include <stdexcept>
#include <string>

namespace equinorm {

using Coord4 = std::array<Eigen::Index, 4>;

inline std::string coord_string(const Coord4& c) {
  return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
         std::to_string(c[2]) + "," + std::to_string(c[3]) + ")";
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : Error {
  using Error::Error;
};

// Division by a zero entry of a reduced statistic; `index` is in the
// statistic's own (reduced) coordinates.
struct DivideByZeroError : Error {
  explicit DivideByZeroError(const Coord4& idx)
      : Error("division by zero statistic entry at " + coord_string(idx)), index(idx) {}
  Coord4 index;
};

struct ZeroVarianceError : Error {
  explicit ZeroVarianceError(const Coord4& idx)
      : Error("zero variance with epsilon 0 at reduced index " + coord_string(idx)),
        index(idx) {}
  Coord4 index;
};

// A pixel whose channel vector has zero norm; the cosine there is undefined.
struct DegeneratePixelError : Error {
  DegeneratePixelError(Eigen::Index b_, Eigen::Index h_, Eigen::Index w_)
      : Error("zero-norm channel vector at pixel (b=" + std::to_string(b_) +
              ", h=" + std::to_string(h_) + ", w=" + std::to_string(w_) + ")"),
        b(b_), h(h_), w(w_) {}
  Eigen::Index b, h, w;
};

struct MisalignedBinsError : Error {
  using Error::Error;
};

struct TensorFileError : Error {
  enum class Kind { bad_magic, bad_version, wrong_ndim, unsupported_dtype, truncated, io };
  TensorFileError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
  Kind kind;
};

}  // namespace equinorm
