#pragma once

// Test-only oracle: classical fixed-step RK4 on the Lorenz field, written
// independently of the library's integrator and vector field.

#include <cmath>
#include <optional>

namespace oracle {

struct Vec3 {
  double x, y, z;
};

struct Lorenz {
  double sigma = 10.0, r = 12.0, beta = 8.0 / 3.0;

  Vec3 operator()(const Vec3& s) const {
    return {sigma * (s.y - s.x), r * s.x - s.y - s.x * s.z, s.x * s.y - beta * s.z};
  }
};

inline Vec3 axpy(const Vec3& a, double h, const Vec3& k) {
  return {a.x + h * k.x, a.y + h * k.y, a.z + h * k.z};
}

inline Vec3 rk4_step(const Lorenz& f, const Vec3& y, double h) {
  const Vec3 k1 = f(y);
  const Vec3 k2 = f(axpy(y, 0.5 * h, k1));
  const Vec3 k3 = f(axpy(y, 0.5 * h, k2));
  const Vec3 k4 = f(axpy(y, h, k3));
  return {y.x + h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
          y.y + h / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y),
          y.z + h / 6.0 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z)};
}

/// +1 for C+, 0 for C-, nullopt if neither is reached by t_max.
inline std::optional<int> rk4_label(const Lorenz& f, Vec3 y, double h = 1e-4,
                                    double t_max = 2000.0, double radius = 1e-3) {
  const double q = std::sqrt(f.beta * (f.r - 1.0));
  const double zc = f.r - 1.0;
  const long steps = static_cast<long>(t_max / h);
  for (long i = 0; i <= steps; ++i) {
    const double dp = std::hypot(y.x - q, y.y - q, y.z - zc);
    const double dm = std::hypot(y.x + q, y.y + q, y.z - zc);
    if (dp < radius) return 1;
    if (dm < radius) return 0;
    y = rk4_step(f, y, h);
  }
  return std::nullopt;
}

}  // namespace oracle
