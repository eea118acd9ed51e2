#pragma once

#include <cmath>

namespace basins {

/// A point of the three-dimensional Lorenz phase space.
struct State3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr State3& operator+=(const State3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr State3& operator-=(const State3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr State3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const State3&, const State3&) = default;
};

constexpr State3 operator+(State3 a, const State3& b) { return a += b; }
constexpr State3 operator-(State3 a, const State3& b) { return a -= b; }
constexpr State3 operator*(double s, State3 a) { return a *= s; }
constexpr State3 operator*(State3 a, double s) { return a *= s; }

inline double norm(const State3& s) { return std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z); }
inline double distance(const State3& a, const State3& b) { return norm(a - b); }
inline bool is_finite(const State3& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z);
}

}  // namespace basins
