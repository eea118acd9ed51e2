#pragma once

#include <span>

namespace basins::stats {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t with `dof` degrees of freedom.
double t_cdf(double t, double dof);

/// Two-sided p-value P(|T| >= |t|), computed from the tail directly so that
/// tiny p-values keep their relative precision.
double t_two_sided_p(double t, double dof);

/// Spearman rank correlation; tied values receive their average rank.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace basins::stats
