#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace srwpnet {

/// Thrown when a computed quantity violates a consistency bound that should
/// hold up to floating-point noise (e.g. a probability outside [0, 1]).
class NumericalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Static network parameters. Transmit power P is carried along for
/// completeness; it cancels in every SIR-level quantity.
struct NetworkConfig {
  double lambda0 = 1e-6;  // areal density of drone base stations (1/m^2)
  double h = 100.0;       // drone altitude (m)
  double alpha = 3.0;     // path-loss exponent; must exceed 2
  double P = 1.0;         // transmit power (arbitrary units)

  void validate() const {
    if (!(lambda0 > 0.0)) throw std::domain_error("NetworkConfig: lambda0 must be > 0");
    if (!(h >= 0.0)) throw std::domain_error("NetworkConfig: h must be >= 0");
    if (!(alpha > 2.0))
      throw std::domain_error(
          "NetworkConfig: alpha must exceed 2, otherwise the interference "
          "integral diverges");
    if (!(P > 0.0)) throw std::domain_error("NetworkConfig: P must be > 0");
  }
};

/// Parameters of the simplified random waypoint motion: alternate a fixed
/// hover of duration w with a straight flight of length s at speed v.
struct MobilityConfig {
  double v = 12.5;   // speed (m/s)
  double w = 5.0;    // hover time (s)
  double s = 250.0;  // flight distance (m)

  bool operator==(const MobilityConfig&) const = default;

  double cycle() const { return w + s / v; }

  void validate() const {
    if (!(v > 0.0)) throw std::domain_error("MobilityConfig: v must be > 0");
    if (!(w >= 0.0)) throw std::domain_error("MobilityConfig: w must be >= 0");
    if (!(s > 0.0)) throw std::domain_error("MobilityConfig: s must be > 0");
    if (!(cycle() > 0.0)) throw std::domain_error("MobilityConfig: cycle duration must be > 0");
  }
};

/// A point in the plane the drones move in.
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;

  friend PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.x + b.x, a.y + b.y}; }
  friend PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.x - b.x, a.y - b.y}; }
  double norm() const { return std::hypot(x, y); }
};

/// Tolerances and limits shared by all quadrature routines.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  int max_subdivisions = 2000;
  double tail_epsilon = 1e-9;  // relative cutoff for semi-infinite truncation

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::domain_error("QuadratureSpec: rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw std::domain_error("QuadratureSpec: abs_tol must be > 0");
    if (max_subdivisions <= 0)
      throw std::domain_error("QuadratureSpec: max_subdivisions must be positive");
    if (!(tail_epsilon > 0.0)) throw std::domain_error("QuadratureSpec: tail_epsilon must be > 0");
  }

  /// A spec with tolerances loosened by `factor`, for inner integrals of
  /// nested quadratures.
  QuadratureSpec relaxed(double factor) const {
    QuadratureSpec out = *this;
    out.rel_tol = rel_tol * factor;
    out.abs_tol = abs_tol * factor;
    return out;
  }
};

}  // namespace srwpnet
