#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace basins {

/// Named estimates. p_values are filled for linear fits only.
struct FitResult {
  std::vector<std::string> names;
  std::vector<double> params;
  std::vector<double> std_errors;
  std::vector<double> p_values;
  double residual_norm = 0.0;  ///< Euclidean norm of the residual vector
  bool converged = false;
  /// Normal equations were (numerically) singular; affected std errors are +inf.
  bool singular = false;
  int iterations = 0;
  std::string message;
  /// Residual norm after the start and after every accepted LM iteration.
  std::vector<double> residual_history;

  double param(const std::string& name) const;
  double std_error(const std::string& name) const;
};

struct ExponentialFitOptions {
  /// Starting (alpha, beta, gamma); defaults from the data when empty.
  std::optional<std::array<double, 3>> init;
  /// Parameters held fixed at their initial value.
  std::array<bool, 3> frozen{false, false, false};
  int max_iterations = 200;
};

/// Default start (sign(y_end - y_start) * 1e-3, 0.3, mean(y)).
std::array<double, 3> default_exponential_init(std::span<const double> y);

/// Levenberg-Marquardt fit of y = alpha * exp(beta * x) + gamma.
/// Throws std::invalid_argument for fewer than 4 points or non-finite data.
FitResult fit_exponential(std::span<const double> x, std::span<const double> y,
                          const ExponentialFitOptions& opts = {});

/// Ordinary least squares y = intercept + slope * x with t-based p-values.
/// Throws std::invalid_argument for fewer than 3 points or constant x.
FitResult fit_linear(std::span<const double> x, std::span<const double> y);

}  // namespace basins
