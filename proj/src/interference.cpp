#include "srwpnet/interference.hpp"

#include <algorithm>
#include <cmath>

#include "srwpnet/geometry.hpp"
#include "srwpnet/mobility.hpp"

namespace srwpnet {
namespace {

// Fraction of flight directions that carry a point at distance l from its
// start into the disc of radius u_0, seen from a start at distance u_x from
// the disc center; the angular kernel of the exclusion-zone integrals.
// Clamped unconditionally: the argument hits +-1 at geometric tangency and
// quadrature nodes can approach those configurations.
double wedge_fraction(double l, double u_x, double u_0) {
  const double arg = (l * l + u_x * u_x - u_0 * u_0) / (2.0 * l * u_x);
  return std::acos(std::clamp(arg, -1.0, 1.0)) / M_PI;
}

// Integral of wedge_fraction(l) f_L(l) dl over (lo, hi) for the continuous
// component of the displacement law.
double wedge_mass_continuous(const DisplacementDistribution& dist, double lo, double hi,
                             double u_x, double u_0, const QuadratureSpec& spec) {
  lo = std::max(lo, dist.support_lo());
  hi = std::min(hi, dist.support_hi());
  if (!(hi > lo)) return 0.0;

  if (!dist.is_general_flight()) {
    auto integrand = [&](double l) {
      return wedge_fraction(l, u_x, u_0) * dist.continuous_pdf(l, spec);
    };
    return integrate_piecewise_singular(integrand, lo, hi, dist.breakpoints(), spec);
  }

  // In-flight law with n >= 2 completed flights: f_L(l) is itself an integral
  // over the net displacement z. Swap the order so the inner integral has an
  // elementary integrand:
  //   T = int f_Zn(z) G(z) dz,
  //   G(z) = int_{max(lo,|z-d|)}^{min(hi,z+d)} wedge(l) kappa(l, z) dl,
  // where kappa is the cosine-law density of l given z.
  const long n = dist.flights();
  const double d = dist.flight_distance();
  const double s = dist.step_length();
  const double ns = static_cast<double>(n) * s;

  auto inner = [&](double z) {
    const double l_lo = std::max(lo, std::abs(z - d));
    const double l_hi = std::min(hi, z + d);
    if (!(l_hi > l_lo)) return 0.0;
    auto kernel = [&](double l) {
      const double inner_sq = (l * l - (z - d) * (z - d)) * ((z + d) * (z + d) - l * l);
      if (inner_sq <= 0.0) return 0.0;  // rounding at the window edge
      return wedge_fraction(l, u_x, u_0) * 2.0 * l / (M_PI * std::sqrt(inner_sq));
    };
    return integrate_singular(kernel, l_lo, l_hi, spec).value;
  };

  // The l-window is non-empty for z in (z_lo, z_hi); the other candidates are
  // kinks of the window bounds.
  const double z_lo = std::max({0.0, lo - d, d - hi});
  const double z_hi = std::min(ns, d + hi);
  if (!(z_hi > z_lo)) return 0.0;
  std::vector<double> cuts = {d - lo, d + lo, hi - d, d};
  if (n == 2) cuts.push_back(2.0 * s);

  auto outer = [&](double z) { return zn_pdf(n, s, z) * inner(z); };
  return integrate_piecewise_singular(outer, z_lo, z_hi, cuts, spec);
}

}  // namespace

double uim_density(double u_x, double u_0_t, double lambda0) {
  if (u_x < 0.0 || u_0_t < 0.0 || lambda0 < 0.0)
    throw std::domain_error("uim_density: arguments must be non-negative");
  return u_x > u_0_t ? lambda0 : 0.0;
}

double beta(double t, double u_x, double u_0, const MobilityConfig& mobility,
            const QuadratureSpec& spec) {
  if (t < 0.0 || u_x < 0.0 || u_0 < 0.0)
    throw std::domain_error("beta: arguments must be non-negative");

  const DisplacementDistribution dist = displacement_distribution(t, mobility);
  const double lo = std::abs(u_x - u_0);
  const double hi = std::min(mobility.v * t, u_x + u_0);

  double raw = 1.0 - dist.cdf(u_0 - u_x, spec);
  if (hi > lo) {
    for (const Atom& atom : dist.atoms())
      if (atom.location > lo && atom.location < hi)
        raw -= atom.mass * wedge_fraction(atom.location, u_x, u_0);
    raw -= wedge_mass_continuous(dist, lo, hi, u_x, u_0, spec);
  }

  if (raw < -1e-6 || raw > 1.0 + 1e-6)
    throw NumericalConsistencyError("beta: raw value " + std::to_string(raw) +
                                    " outside [0, 1] beyond tolerance");
  return std::clamp(raw, 0.0, 1.0);
}

double udm_density(const DensityQuery& q, const NetworkConfig& cfg,
                   const MobilityConfig& mobility, const QuadratureSpec& spec) {
  q.validate();
  cfg.validate();
  mobility.validate();

  const double vt = mobility.v * q.t;
  if (q.u_x >= q.u_0 + vt) return cfg.lambda0;
  if (q.u_x <= std::abs(q.u_0 - vt) && !(q.t > q.u_0 / mobility.v)) return 0.0;
  const double b = beta(q.t, q.u_x, q.u_0, mobility, spec);
  return std::clamp(cfg.lambda0 * b, 0.0, cfg.lambda0);
}

double lambda1_direct(double t, double u_x, double u_0, const NetworkConfig& cfg,
                      const MobilityConfig& mobility, const QuadratureSpec& spec) {
  if (t < 0.0 || u_0 < 0.0) throw std::domain_error("lambda1_direct: arguments must be non-negative");
  if (!(u_x > 0.0))
    throw std::domain_error("lambda1_direct: the double integral needs u_x > 0");
  cfg.validate();

  // Radial inner integral over the initial position r of a point that lands
  // on the annulus at u_x after moving a distance l.
  auto radial = [&](double l) -> double {
    if (l == 0.0) {
      // Kernel limit: an undisplaced point contributes exactly where it was.
      if (u_x < u_0) return M_PI;
      if (u_x == u_0) return 0.5 * M_PI;
      return 0.0;
    }
    const double r_lo = std::abs(l - u_x);
    const double r_hi = std::min(l + u_x, u_0);
    if (!(r_hi > r_lo)) return 0.0;
    auto kernel = [&](double r) {
      const double inner_sq =
          (u_x * u_x - (l - r) * (l - r)) * ((l + r) * (l + r) - u_x * u_x);
      if (inner_sq <= 0.0) return 0.0;  // rounding at the window edge
      return 2.0 * r / std::sqrt(inner_sq);
    };
    return integrate_singular(kernel, r_lo, r_hi, spec).value;
  };

  const DisplacementDistribution dist = displacement_distribution(t, mobility);
  double total = 0.0;
  for (const Atom& atom : dist.atoms()) total += atom.mass * radial(atom.location);

  if (dist.has_continuous()) {
    // Outer kinks: where the radial window bounds change shape or empty out.
    std::vector<double> cuts = dist.breakpoints();
    cuts.insert(cuts.end(), {u_x, std::abs(u_0 - u_x), u_0 + u_x});
    const double lo = std::max(dist.support_lo(), u_x - u_0);
    const double hi = std::min(dist.support_hi(), u_x + u_0);
    if (hi > lo) {
      auto outer = [&](double l) {
        return dist.continuous_pdf(l, spec.relaxed(0.1)) * radial(l);
      };
      total += integrate_piecewise_singular(outer, lo, hi, cuts, spec);
    }
  }
  return std::max(cfg.lambda0 / M_PI * total, 0.0);
}

DensityProfile density_profile(double t, double u_0, std::span<const double> u_x_grid,
                               const NetworkConfig& cfg, const MobilityConfig& mobility,
                               const QuadratureSpec& spec) {
  if (u_x_grid.empty()) throw std::domain_error("density_profile: empty grid");
  for (std::size_t i = 1; i < u_x_grid.size(); ++i)
    if (!(u_x_grid[i] > u_x_grid[i - 1]))
      throw std::domain_error("density_profile: grid must be strictly increasing");

  DensityProfile profile;
  profile.t = t;
  profile.u_0 = u_0;
  profile.values.reserve(u_x_grid.size());
  for (double u_x : u_x_grid) {
    const double ratio = udm_density({t, u_x, u_0}, cfg, mobility, spec) / cfg.lambda0;
    profile.values.emplace_back(u_x, ratio);
  }
  return profile;
}

}  // namespace srwpnet
