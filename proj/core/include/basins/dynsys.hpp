#pragma once

#include <string_view>
#include <utility>

#include "basins/state.hpp"

namespace basins {

/// Upper end of the bistable window (subcritical Hopf of C+ and C-).
inline constexpr double kBistableRMax = 24.74;

struct LorenzParams {
  double sigma = 10.0;
  double r = 12.0;
  double beta = 8.0 / 3.0;

  /// Throws std::invalid_argument unless sigma, r, beta are finite and positive.
  void validate() const;
  /// Throws std::invalid_argument unless 1 < r < 24.74 (in addition to validate()).
  void validate_bistable() const;
};

struct IntegratorConfig {
  double abs_tol = 1e-6;
  double rel_tol = 1e-6;
  double max_time = 2000.0;
  double initial_step = 1e-3;
  double min_step = 1e-12;
  double max_step = 1.0;
  /// Stop as soon as the state is this close to C+ or C-; 0 disables.
  double convergence_radius = 1e-3;

  void validate() const;
};

State3 lorenz_rhs(const LorenzParams& p, const State3& s);

/// Nontrivial equilibria (C+, C-). Throws std::invalid_argument for r <= 1.
std::pair<State3, State3> fixed_points(const LorenzParams& p);

/// The Lorenz equivariance (x, y, z) -> (-x, -y, z).
constexpr State3 symmetry_image(const State3& s) { return {-s.x, -s.y, s.z}; }

enum class IntegrationStatus {
  Converged,      ///< reached convergence_radius of a fixed point
  TimeLimit,      ///< ran to max_time without meeting the radius
  StepUnderflow,  ///< controller asked for a step below min_step
  NonFinite,      ///< state left the finite range
};

std::string_view to_string(IntegrationStatus s);

struct IntegrationResult {
  State3 final_state;
  double elapsed = 0.0;
  IntegrationStatus status = IntegrationStatus::TimeLimit;
  long accepted_steps = 0;
  long rejected_steps = 0;

  bool converged() const { return status == IntegrationStatus::Converged; }
  /// True for StepUnderflow and NonFinite, which are failures rather than
  /// plain non-convergence.
  bool failed() const {
    return status == IntegrationStatus::StepUnderflow || status == IntegrationStatus::NonFinite;
  }
};

/// Adaptive Tsitouras 5(4) integration of the Lorenz flow from `ic` until it
/// settles on C+ or C- (or the time cap is hit).
IntegrationResult integrate_to_rest(const LorenzParams& p, const State3& ic,
                                    const IntegratorConfig& cfg);

}  // namespace basins
