#pragma once

// Tsitouras 5(4) embedded Runge-Kutta pair, seven stages, first-same-as-last.
// The propagated solution is the fifth-order one.

#include "basins/state.hpp"

namespace basins::tsit5 {

inline constexpr double c2 = 0.161;
inline constexpr double c3 = 0.327;
inline constexpr double c4 = 0.9;
inline constexpr double c5 = 0.9800255409045097;

inline constexpr double a21 = 0.161;
inline constexpr double a31 = -0.008480655492356989;
inline constexpr double a32 = 0.335480655492357;
inline constexpr double a41 = 2.897153057105493;
inline constexpr double a42 = -6.359448489975075;
inline constexpr double a43 = 4.3622954328695815;
inline constexpr double a51 = 5.325864828439257;
inline constexpr double a52 = -11.748883564062828;
inline constexpr double a53 = 7.4955393428898365;
inline constexpr double a54 = -0.09249506636175525;
inline constexpr double a61 = 5.86145544294642;
inline constexpr double a62 = -12.92096931784711;
inline constexpr double a63 = 8.159367898576159;
inline constexpr double a64 = -0.071584973281401;
inline constexpr double a65 = -0.028269050394068383;
// Fifth-order weights (row 7 of the tableau).
inline constexpr double b1 = 0.09646076681806523;
inline constexpr double b2 = 0.01;
inline constexpr double b3 = 0.4798896504144996;
inline constexpr double b4 = 1.379008574103742;
inline constexpr double b5 = -3.290069515436081;
inline constexpr double b6 = 2.324710524099774;
// b - b_hat, the embedded error weights.
inline constexpr double e1 = -0.00178001105222577714;
inline constexpr double e2 = -0.0008164344596567469;
inline constexpr double e3 = 0.007880878010261995;
inline constexpr double e4 = -0.1447110071732629;
inline constexpr double e5 = 0.5823571654525552;
inline constexpr double e6 = -0.45808210592918697;
inline constexpr double e7 = 0.015151515151515152;

struct Step {
  State3 y;      ///< fifth-order solution at t + h
  State3 k_end;  ///< f(y), reused as the next step's first stage
  State3 error;  ///< y5 - y4
};

/// One step from (y, k1 = f(y)) with step size h. The system is autonomous.
template <typename Rhs>
Step step(const Rhs& f, const State3& y, const State3& k1, double h) {
  const State3 k2 = f(y + h * (a21 * k1));
  const State3 k3 = f(y + h * (a31 * k1 + a32 * k2));
  const State3 k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const State3 k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const State3 k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  const State3 y5 = y + h * (b1 * k1 + b2 * k2 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const State3 k7 = f(y5);
  const State3 err = h * (e1 * k1 + e2 * k2 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  return {y5, k7, err};
}

/// Fixed-step integration over [0, t_end] with n equal steps; no error control.
template <typename Rhs>
State3 integrate_fixed(const Rhs& f, State3 y, double t_end, long n) {
  const double h = t_end / static_cast<double>(n);
  State3 k = f(y);
  for (long i = 0; i < n; ++i) {
    const Step s = step(f, y, k, h);
    y = s.y;
    k = s.k_end;
  }
  return y;
}

}  // namespace basins::tsit5
