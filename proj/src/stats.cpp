#include "srwpnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srwpnet {
namespace {

// Lower-incomplete series representation, valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper-incomplete continued fraction (modified Lentz), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: requires a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

ChiSquareResult chi_square_uniform(std::span<const double> samples, double lo, double hi,
                                   int bins) {
  if (bins < 2) throw std::domain_error("chi_square_uniform: need at least 2 bins");
  if (!(hi > lo)) throw std::domain_error("chi_square_uniform: empty range");
  if (samples.empty()) throw std::domain_error("chi_square_uniform: no samples");

  std::vector<long> counts(static_cast<std::size_t>(bins), 0);
  for (double v : samples) {
    if (v < lo || v >= hi)
      throw std::domain_error("chi_square_uniform: sample outside the stated range");
    auto bin = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
    if (bin >= counts.size()) bin = counts.size() - 1;
    ++counts[bin];
  }

  const double expected = static_cast<double>(samples.size()) / bins;
  double stat = 0.0;
  for (long c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  const long dof = bins - 1;
  return {stat, dof, gamma_q(0.5 * static_cast<double>(dof), 0.5 * stat)};
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::domain_error("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double above = (static_cast<double>(i) + 1.0) / n - f;
    const double below = f - static_cast<double>(i) / n;
    worst = std::max({worst, above, below});
  }
  return worst;
}

double ks_critical_value(double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("ks_critical_value: bad alpha");
  if (n == 0) throw std::domain_error("ks_critical_value: n must be positive");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

double ks_p_value(double d, std::size_t n) {
  if (n == 0) throw std::domain_error("ks_p_value: n must be positive");
  const double lambda = d * std::sqrt(static_cast<double>(n));
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = 2.0 * ((j % 2 == 1) ? 1.0 : -1.0) *
                        std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double Summary::std_error() const {
  if (count < 2) return 0.0;
  return std::sqrt(variance / static_cast<double>(count));
}

Summary summarize(std::span<const double> values) {
  Summary out;
  double mean = 0.0;
  double m2 = 0.0;
  long n = 0;
  for (double v : values) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  out.count = n;
  out.mean = mean;
  out.variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  return out;
}

}  // namespace srwpnet
