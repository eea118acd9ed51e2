#include "basins/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "basins/stats.hpp"

namespace basins {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Damping schedule.
constexpr double kLambdaStart = 1e-3;
constexpr double kLambdaUp = 10.0;
constexpr double kLambdaDown = 10.0;
constexpr double kLambdaMax = 1e16;
constexpr double kStepTol = 1e-10;
constexpr double kRelResidualTol = 1e-12;

void require_finite(std::span<const double> v, const char* what) {
  for (double d : v) {
    if (!std::isfinite(d)) throw std::invalid_argument(std::string(what) + " contains non-finite values");
  }
}

struct ExpModel {
  std::span<const double> x;
  std::span<const double> y;

  Eigen::VectorXd residuals(const Eigen::Vector3d& t) const {
    Eigen::VectorXd r(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      r(static_cast<Eigen::Index>(i)) = t(0) * std::exp(t(1) * x[i]) + t(2) - y[i];
    }
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::Vector3d& t) const {
    Eigen::MatrixXd J(static_cast<Eigen::Index>(x.size()), 3);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double e = std::exp(t(1) * x[i]);
      J(row, 0) = e;
      J(row, 1) = t(0) * x[i] * e;
      J(row, 2) = 1.0;
    }
    return J;
  }
};

}  // namespace

double FitResult::param(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::out_of_range("no fit parameter '" + name + "'");
  return params[static_cast<std::size_t>(it - names.begin())];
}

double FitResult::std_error(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::out_of_range("no fit parameter '" + name + "'");
  return std_errors[static_cast<std::size_t>(it - names.begin())];
}

std::array<double, 3> default_exponential_init(std::span<const double> y) {
  if (y.empty()) throw std::invalid_argument("empty data");
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  const double rise = y.back() - y.front();
  const double sign = rise > 0.0 ? 1.0 : (rise < 0.0 ? -1.0 : 0.0);
  return {sign * 1e-3, 0.3, mean};
}

FitResult fit_exponential(std::span<const double> x, std::span<const double> y,
                          const ExponentialFitOptions& opts) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y lengths differ");
  if (x.size() < 4) throw std::invalid_argument("exponential fit needs at least 4 points");
  require_finite(x, "x");
  require_finite(y, "y");

  const ExpModel model{x, y};
  const auto init = opts.init.value_or(default_exponential_init(y));
  Eigen::Vector3d theta(init[0], init[1], init[2]);

  std::vector<Eigen::Index> free;
  for (Eigen::Index k = 0; k < 3; ++k) {
    if (!opts.frozen[static_cast<std::size_t>(k)]) free.push_back(k);
  }
  const auto nf = static_cast<Eigen::Index>(free.size());

  FitResult out;
  out.names = {"alpha", "beta", "gamma"};

  Eigen::VectorXd r = model.residuals(theta);
  double rss = r.squaredNorm();
  out.residual_history.push_back(std::sqrt(rss));
  double lambda = kLambdaStart;

  auto reduced_normal = [&](const Eigen::MatrixXd& J, Eigen::MatrixXd& A, Eigen::VectorXd& g) {
    Eigen::MatrixXd Jf(J.rows(), nf);
    for (Eigen::Index k = 0; k < nf; ++k) Jf.col(k) = J.col(free[static_cast<std::size_t>(k)]);
    A = Jf.transpose() * Jf;
    g = Jf.transpose() * r;
  };

  Eigen::MatrixXd A;
  Eigen::VectorXd g;
  reduced_normal(model.jacobian(theta), A, g);

  bool done = nf == 0 || rss == 0.0;
  out.converged = done;
  int iter = 0;
  while (!done && iter < opts.max_iterations) {
    ++iter;
    const double diag_floor = 1e-12 * std::max(1.0, A.diagonal().maxCoeff());
    Eigen::MatrixXd damped = A;
    for (Eigen::Index k = 0; k < nf; ++k) damped(k, k) += lambda * std::max(A(k, k), diag_floor);
    const Eigen::VectorXd delta = damped.ldlt().solve(-g);
    const double step_norm = delta.norm();

    Eigen::Vector3d trial = theta;
    for (Eigen::Index k = 0; k < nf; ++k) trial(free[static_cast<std::size_t>(k)]) += delta(k);
    const Eigen::VectorXd r_trial = model.residuals(trial);
    const double rss_trial = r_trial.squaredNorm();

    if (delta.allFinite() && std::isfinite(rss_trial) && rss_trial <= rss) {
      const double rel_change = rss > 0.0 ? (rss - rss_trial) / rss : 0.0;
      theta = trial;
      r = r_trial;
      rss = rss_trial;
      out.residual_history.push_back(std::sqrt(rss));
      lambda = std::max(lambda / kLambdaDown, 1e-15);
      reduced_normal(model.jacobian(theta), A, g);
      if (step_norm < kStepTol || rel_change < kRelResidualTol || rss == 0.0) {
        out.converged = true;
        done = true;
      }
    } else {
      // Rejections with a vanishing step mean we are sitting at the minimum.
      if (delta.allFinite() && step_norm < kStepTol) {
        out.converged = true;
        done = true;
      }
      lambda *= kLambdaUp;
      if (lambda > kLambdaMax) {
        out.message = "damping exceeded its ceiling without progress";
        done = true;
      }
    }
  }
  out.iterations = iter;
  if (!out.converged && out.message.empty()) {
    out.message = "iteration limit reached";
  }

  out.params = {theta(0), theta(1), theta(2)};
  out.residual_norm = std::sqrt(rss);
  out.std_errors.assign(3, 0.0);

  const auto n = static_cast<double>(x.size());
  const double dof = n - static_cast<double>(nf);
  if (nf > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    const double tol = sv(0) * static_cast<double>(nf) * std::numeric_limits<double>::epsilon();
    bool singular = sv(0) == 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) singular = singular || sv(k) <= tol;
    out.singular = singular;
    if (singular) {
      for (Eigen::Index k = 0; k < nf; ++k) out.std_errors[static_cast<std::size_t>(free[static_cast<std::size_t>(k)])] = kInf;
      if (out.message.empty()) out.message = "singular normal equations; parameters not identifiable";
    } else {
      const Eigen::MatrixXd cov = A.inverse() * (rss / dof);
      for (Eigen::Index k = 0; k < nf; ++k) {
        out.std_errors[static_cast<std::size_t>(free[static_cast<std::size_t>(k)])] =
            std::sqrt(std::max(0.0, cov(k, k)));
      }
    }
  }
  return out;
}

FitResult fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y lengths differ");
  if (x.size() < 3) throw std::invalid_argument("linear fit needs at least 3 points");
  require_finite(x, "x");
  require_finite(y, "y");
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
    throw std::invalid_argument("linear fit needs at least two distinct x values");
  }

  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (intercept + slope * x[i]);
    rss += e * e;
  }
  const double dof = n - 2.0;
  const double sigma2 = rss / dof;
  const double se_slope = std::sqrt(sigma2 / sxx);
  const double se_intercept = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));

  auto p_value = [&](double est, double se) {
    if (se == 0.0) return est == 0.0 ? 1.0 : 0.0;
    return stats::t_two_sided_p(est / se, dof);
  };

  FitResult out;
  out.names = {"intercept", "slope"};
  out.params = {intercept, slope};
  out.std_errors = {se_intercept, se_slope};
  out.p_values = {p_value(intercept, se_intercept), p_value(slope, se_slope)};
  out.residual_norm = std::sqrt(rss);
  out.converged = true;
  out.residual_history = {out.residual_norm};
  return out;
}

}  // namespace basins
