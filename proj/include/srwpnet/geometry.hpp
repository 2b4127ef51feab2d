#pragma once

#include <cmath>
#include <stdexcept>

#include "srwpnet/types.hpp"

namespace srwpnet {

/// Slant distance between a ground point at horizontal offset u_x and a
/// platform at altitude h.
inline double distance_3d(double u_x, double h) {
  if (u_x < 0.0 || h < 0.0) throw std::domain_error("distance_3d: arguments must be non-negative");
  return std::hypot(u_x, h);
}

/// Wraps an angle to [-pi, pi).
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * M_PI);  // (-pi, pi]
  if (a == M_PI) a = -M_PI;
  return a;
}

/// Wraps an angle to [0, 2*pi).
inline double wrap_angle_positive(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

/// Clamps to [-1, 1] so acos/asin tolerate floating-point overshoot at
/// triangle-degenerate configurations. Overshoot beyond `tol` is a logic
/// error upstream.
inline double clamp_unit(double x, double tol = 1e-9) {
  if (x > 1.0) {
    if (x > 1.0 + tol) throw std::domain_error("clamp_unit: argument exceeds 1 beyond tolerance");
    return 1.0;
  }
  if (x < -1.0) {
    if (x < -1.0 - tol) throw std::domain_error("clamp_unit: argument below -1 beyond tolerance");
    return -1.0;
  }
  return x;
}

}  // namespace srwpnet
