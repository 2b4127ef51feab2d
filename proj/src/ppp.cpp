#include "srwpnet/ppp.hpp"

#include <cmath>
#include <stdexcept>

namespace srwpnet {

std::vector<PlanarPoint> sample_ppp(double lambda, double radius, Pcg32& rng) {
  if (lambda < 0.0) throw std::domain_error("sample_ppp: lambda must be non-negative");
  if (!(radius > 0.0)) throw std::domain_error("sample_ppp: radius must be positive");

  const long count = poisson(rng, lambda * M_PI * radius * radius);
  std::vector<PlanarPoint> points;
  points.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(uniform_double(rng));
    const double theta = uniform_angle(rng);
    points.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return points;
}

}  // namespace srwpnet
