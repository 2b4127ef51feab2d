#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "srwpnet/types.hpp"

namespace srwpnet {

using Integrand = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

/// Raised when a quadrature routine cannot meet its tolerance; carries the
/// best estimate obtained so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what),
        best_estimate(best_estimate),
        error_estimate(error_estimate) {}

  double best_estimate;
  double error_estimate;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of a smooth integrand on
/// [a, b]. Worst panel is bisected first; converged when the summed error
/// estimate drops below max(abs_tol, rel_tol * |value|).
QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              const QuadratureSpec& spec = {});

/// Integration on [a, b] tolerating inverse-square-root endpoint behavior.
/// Applies x = a + (b-a) sin^2(theta), which clears (x-a)^(-1/2) and
/// (b-x)^(-1/2) singularities, then integrates adaptively in theta.
QuadResult integrate_singular(const Integrand& f, double a, double b,
                              const QuadratureSpec& spec = {});

/// Integration of an eventually-decreasing integrand on [a, inf). Scans
/// segments of doubling width starting at `scale_hint` until the estimated
/// remaining tail falls below tail_epsilon * |accumulated|.
QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   const QuadratureSpec& spec = {},
                                   double scale_hint = 1.0);

/// Splits [a, b] at the interior breakpoints (unsorted, possibly outside the
/// interval) and applies integrate_singular on each piece. Used for
/// integrands whose singularities or kinks sit at known abscissae.
double integrate_piecewise_singular(const Integrand& f, double a, double b,
                                    std::span<const double> breakpoints,
                                    const QuadratureSpec& spec = {});

}  // namespace srwpnet
