#pragma once

#include <array>
#include <cmath>

namespace masing {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

/// One point (x, y, z, p, q) of the unknown of the first-order system.
/// x, y: base-plane coordinates; z: height; p, q: gradient components.
struct State5 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double p = 0.0;
  double q = 0.0;

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && std::isfinite(p) &&
           std::isfinite(q);
  }
  friend bool operator==(const State5&, const State5&) = default;
};

/// Component indices, in system order.
enum Component : int { kX = 0, kY = 1, kZ = 2, kP = 3, kQ = 4 };
inline constexpr int kNumComponents = 5;
inline constexpr std::array<const char*, 5> kComponentNames = {"x", "y", "z", "p", "q"};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace masing
