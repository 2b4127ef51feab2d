#pragma once

#include <vector>

#include "srwpnet/rng.hpp"
#include "srwpnet/types.hpp"

namespace srwpnet {

/// Samples a homogeneous Poisson point process of the given density on the
/// disc of the given radius centered at the origin: Poisson(lambda pi R^2)
/// points, i.i.d. uniform on the disc.
std::vector<PlanarPoint> sample_ppp(double lambda, double radius, Pcg32& rng);

}  // namespace srwpnet
