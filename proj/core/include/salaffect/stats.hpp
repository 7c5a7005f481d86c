#pragma once

#include <cstddef>
#include <span>

namespace salaffect {

struct PccResult {
  double r = 0.0;
  double p = 1.0;   // two-tailed
  std::size_t n = 0;
};

/// Pearson product-moment correlation with its two-tailed p-value.
/// Throws LengthMismatch, TooFewSamples (n < 3) or DegenerateInput when
/// either series is constant.
PccResult pearson(std::span<const double> x, std::span<const double> y);

/// Two-tailed significance of a sample correlation r over n pairs, from the
/// Student t distribution with n-2 degrees of freedom. |r| == 1 gives 0.
double p_value_two_tailed(double r, std::size_t n);

/// Regularised incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// P(T <= t) for Student's t with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

}  // namespace salaffect
