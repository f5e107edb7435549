#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

namespace equinorm {

// The four dimensions of a feature map: batch, channel, height, width.
enum class Axis : std::uint8_t { B = 0, C = 1, H = 2, W = 3 };

inline constexpr char axis_letter(Axis a) {
  constexpr char letters[4] = {'B', 'C', 'H', 'W'};
  return letters[static_cast<int>(a)];
}

// A subset of {B, C, H, W} stored as a 4-bit mask. The empty set is valid.
class AxisSet {
 public:
  constexpr AxisSet() = default;
  constexpr AxisSet(std::initializer_list<Axis> axes) {
    for (Axis a : axes) bits_ = static_cast<std::uint8_t>(bits_ | bit(a));
  }

  static constexpr AxisSet from_mask(unsigned mask) {
    AxisSet s;
    s.bits_ = static_cast<std::uint8_t>(mask & 0xFu);
    return s;
  }
  static constexpr AxisSet all() { return from_mask(0xFu); }

  constexpr bool has(Axis a) const { return (bits_ & bit(a)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned mask() const { return bits_; }
  constexpr int count() const {
    int n = 0;
    for (unsigned m = bits_; m != 0; m >>= 1) n += static_cast<int>(m & 1u);
    return n;
  }

  // Superset test: does this set contain every axis of `other`?
  constexpr bool contains(AxisSet other) const {
    return (bits_ & other.bits_) == other.bits_;
  }
  constexpr bool intersects(AxisSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr AxisSet operator|(AxisSet o) const { return from_mask(bits_ | o.bits_); }
  constexpr AxisSet operator&(AxisSet o) const { return from_mask(bits_ & o.bits_); }

  friend constexpr bool operator==(AxisSet a, AxisSet b) { return a.bits_ == b.bits_; }
  friend constexpr bool operator!=(AxisSet a, AxisSet b) { return a.bits_ != b.bits_; }

  // "BHW" style; "-" for the empty set.
  std::string to_string() const {
    if (empty()) return "-";
    std::string s;
    for (Axis a : {Axis::B, Axis::C, Axis::H, Axis::W})
      if (has(a)) s += axis_letter(a);
    return s;
  }

 private:
  static constexpr std::uint8_t bit(Axis a) {
    return static_cast<std::uint8_t>(1u << static_cast<int>(a));
  }
  std::uint8_t bits_ = 0;
};

inline constexpr AxisSet kSpatialAxes{Axis::H, Axis::W};
inline constexpr AxisSet kBatchSpatialAxes{Axis::B, Axis::H, Axis::W};

}  // namespace equinorm
