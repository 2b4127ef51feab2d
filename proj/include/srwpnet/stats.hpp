#pragma once

#include <functional>
#include <span>
#include <vector>

namespace srwpnet {

/// Regularized upper incomplete gamma Q(a, x); series/continued-fraction
/// evaluation.
double gamma_q(double a, double x);

struct ChiSquareResult {
  double statistic = 0.0;
  long dof = 0;
  double p_value = 1.0;
};

/// Chi-square goodness-of-fit of samples against the uniform law on
/// [lo, hi), with equal-width bins.
ChiSquareResult chi_square_uniform(std::span<const double> samples, double lo, double hi,
                                   int bins);

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F| against the given
/// CDF. Sorts a copy of the samples.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic KS critical value at the given significance level for n
/// samples: c(alpha) / sqrt(n).
double ks_critical_value(double alpha, std::size_t n);

/// Asymptotic KS p-value for statistic d with n samples.
double ks_p_value(double d, std::size_t n);

struct Summary {
  long count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased

  double std_error() const;
};

Summary summarize(std::span<const double> values);

}  // namespace srwpnet
