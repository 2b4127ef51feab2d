#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace srwpnet::detail {

// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
 public:
  CubicSpline() = default;

  CubicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
      throw std::invalid_argument("CubicSpline: need >= 2 matching points");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw std::invalid_argument("CubicSpline: abscissae must be strictly increasing");

    m_.assign(n, 0.0);
    if (n == 2) return;

    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    diag[0] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      diag[i] = 2.0 * (h0 + h1);
      upper[i] = h1;
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    diag[n - 1] = 1.0;

    // Thomas solve with the natural boundary (second derivative zero).
    for (std::size_t i = 2; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1];
      const double w = h0 / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  double operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
  }

  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace srwpnet::detail
