#pragma once

#include <vector>

#include "srwpnet/displacement.hpp"
#include "srwpnet/quadrature.hpp"
#include "srwpnet/types.hpp"

namespace srwpnet {

struct DensityQuery {
  double t = 0.0;    // time (s)
  double u_x = 0.0;  // horizontal distance from the point above the UE (m)
  double u_0 = 0.0;  // initial serving horizontal distance (m)

  void validate() const {
    if (t < 0.0 || u_x < 0.0 || u_0 < 0.0)
      throw std::domain_error("DensityQuery: all fields must be non-negative");
  }
};

/// Normalized interferer density tabulated over a horizontal-distance grid.
struct DensityProfile {
  double t = 0.0;
  double u_0 = 0.0;
  std::vector<std::pair<double, double>> values;  // (u_x, lambda/lambda0)
};

/// Interferer density when the serving drone moves independently of the UE:
/// full density outside the current serving distance, zero inside.
double uim_density(double u_x, double u_0_t, double lambda0);

/// Fraction of the full density contributed at distance u_x by drones that
/// started outside the exclusion disc of radius u_0, after displacement time
/// t. In [0, 1]; a raw value outside [-1e-6, 1 + 1e-6] raises
/// NumericalConsistencyError before clamping.
double beta(double t, double u_x, double u_0, const MobilityConfig& mobility,
            const QuadratureSpec& spec = {});

/// Interferer density for the UE-dependent serving model: the branch form in
/// t, u_x, u_0 with beta inside the displacement-reachable annulus. Clamped
/// to [0, lambda0].
double udm_density(const DensityQuery& q, const NetworkConfig& cfg,
                   const MobilityConfig& mobility, const QuadratureSpec& spec = {});

/// Density removed at u_x by the exclusion zone, evaluated from the
/// unsimplified double integral over initial radius and displacement. An
/// independent check of udm_density: the two satisfy
/// lambda1_direct + udm_density = lambda0. Requires u_x > 0.
double lambda1_direct(double t, double u_x, double u_0, const NetworkConfig& cfg,
                      const MobilityConfig& mobility, const QuadratureSpec& spec = {});

/// Tabulates udm_density / lambda0 over a strictly increasing grid.
DensityProfile density_profile(double t, double u_0, std::span<const double> u_x_grid,
                               const NetworkConfig& cfg, const MobilityConfig& mobility,
                               const QuadratureSpec& spec = {});

}  // namespace srwpnet
