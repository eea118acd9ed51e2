#include "basins/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "basins/tsit5.hpp"

namespace basins {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void LorenzParams::validate() const {
  if (!positive_finite(sigma) || !positive_finite(r) || !positive_finite(beta)) {
    throw std::invalid_argument("Lorenz parameters sigma, r, beta must be finite and positive");
  }
}

void LorenzParams::validate_bistable() const {
  validate();
  if (!(r > 1.0 && r < kBistableRMax)) {
    throw std::invalid_argument("r = " + std::to_string(r) +
                                " is outside the bistable range 1 < r < 24.74");
  }
}

void IntegratorConfig::validate() const {
  if (!positive_finite(abs_tol) || !positive_finite(rel_tol)) {
    throw std::invalid_argument("integrator tolerances must be positive");
  }
  if (!positive_finite(min_step) || !(min_step <= initial_step) || !(initial_step <= max_step) ||
      !std::isfinite(max_step)) {
    throw std::invalid_argument("integrator steps must satisfy 0 < min_step <= initial_step <= max_step");
  }
  if (!positive_finite(max_time)) throw std::invalid_argument("max_time must be positive");
  if (!(convergence_radius >= 0.0) || !std::isfinite(convergence_radius)) {
    throw std::invalid_argument("convergence_radius must be >= 0");
  }
}

State3 lorenz_rhs(const LorenzParams& p, const State3& s) {
  return {p.sigma * (s.y - s.x), p.r * s.x - s.y - s.x * s.z, s.x * s.y - p.beta * s.z};
}

std::pair<State3, State3> fixed_points(const LorenzParams& p) {
  p.validate();
  if (!(p.r > 1.0)) throw std::invalid_argument("fixed points C+/C- require r > 1");
  const double q = std::sqrt(p.beta * (p.r - 1.0));
  const double z = p.r - 1.0;
  return {State3{q, q, z}, State3{-q, -q, z}};
}

std::string_view to_string(IntegrationStatus s) {
  switch (s) {
    case IntegrationStatus::Converged: return "converged";
    case IntegrationStatus::TimeLimit: return "time_limit";
    case IntegrationStatus::StepUnderflow: return "step_underflow";
    case IntegrationStatus::NonFinite: return "non_finite";
  }
  return "unknown";
}

IntegrationResult integrate_to_rest(const LorenzParams& p, const State3& ic,
                                    const IntegratorConfig& cfg) {
  p.validate();
  cfg.validate();

  const bool has_attractors = p.r > 1.0;
  State3 c_plus, c_minus;
  if (has_attractors) std::tie(c_plus, c_minus) = fixed_points(p);
  auto settled = [&](const State3& s) {
    return has_attractors && (distance(s, c_plus) < cfg.convergence_radius ||
                              distance(s, c_minus) < cfg.convergence_radius);
  };

  const auto f = [&p](const State3& s) { return lorenz_rhs(p, s); };

  IntegrationResult out;
  out.final_state = ic;
  if (!is_finite(ic)) {
    out.status = IntegrationStatus::NonFinite;
    return out;
  }
  if (settled(ic)) {
    out.status = IntegrationStatus::Converged;
    return out;
  }

  State3 y = ic;
  State3 k = f(y);
  double t = 0.0;
  double h = cfg.initial_step;

  while (t < cfg.max_time) {
    const double remaining = cfg.max_time - t;
    const bool last = h >= remaining;
    const double h_try = last ? remaining : h;

    const tsit5::Step s = tsit5::step(f, y, k, h_try);

    auto scaled = [&](double e, double now, double prev) {
      return e / (cfg.abs_tol + cfg.rel_tol * std::max(std::abs(now), std::abs(prev)));
    };
    const double ex = scaled(s.error.x, s.y.x, y.x);
    const double ey = scaled(s.error.y, s.y.y, y.y);
    const double ez = scaled(s.error.z, s.y.z, y.z);
    const double err = std::sqrt((ex * ex + ey * ey + ez * ez) / 3.0);

    if (!std::isfinite(err)) {
      // Treat as a maximal rejection; a genuinely blown-up state ends below.
      ++out.rejected_steps;
      h = h_try * 0.2;
    } else {
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        t = last ? cfg.max_time : t + h_try;
        y = s.y;
        k = s.k_end;
        ++out.accepted_steps;
        if (!is_finite(y)) {
          out.final_state = y;
          out.elapsed = t;
          out.status = IntegrationStatus::NonFinite;
          return out;
        }
        if (settled(y)) {
          out.final_state = y;
          out.elapsed = t;
          out.status = IntegrationStatus::Converged;
          return out;
        }
        h = std::min(cfg.max_step, h_try * factor);
      } else {
        ++out.rejected_steps;
        h = h_try * factor;
      }
    }
    if (h < cfg.min_step) {
      out.final_state = y;
      out.elapsed = t;
      out.status = IntegrationStatus::StepUnderflow;
      return out;
    }
  }

  out.final_state = y;
  out.elapsed = t;
  out.status = IntegrationStatus::TimeLimit;
  return out;
}

}  // namespace basins
