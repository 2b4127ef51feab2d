#include "srwpnet/displacement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srwpnet/geometry.hpp"

namespace srwpnet {
namespace {

void check_zn_args(long n, double s) {
  if (n < 1) throw std::domain_error("Z_n law: n must be at least 1");
  if (!(s > 0.0)) throw std::domain_error("Z_n law: s must be positive");
}

// CDF of sqrt(a^2 + d^2 - 2 a d cos(Phi)) with Phi uniform and fixed legs
// a, d > 0: the in-flight law conditioned on the net displacement.
double cosine_law_cdf(double l, double a, double d) {
  const double lo = std::abs(a - d);
  const double hi = a + d;
  if (l <= lo) return 0.0;
  if (l >= hi) return 1.0;
  return std::acos(clamp_unit((a * a + d * d - l * l) / (2.0 * a * d))) / M_PI;
}

// Density matching cosine_law_cdf on its open support.
double cosine_law_pdf(double l, double a, double d) {
  const double lo = std::abs(a - d);
  const double hi = a + d;
  if (l <= lo || l >= hi) return 0.0;
  const double inner = (l * l - (a - d) * (a - d)) * ((a + d) * (a + d) - l * l);
  if (inner <= 0.0) return 0.0;
  return 2.0 * l / (M_PI * std::sqrt(inner));
}

struct FlightParams {
  long n;
  double d;
};

FlightParams require_flight(double t, const MobilityConfig& mobility, const char* op) {
  const Phase phase = phase_at(mobility, t);
  if (!phase.flying)
    throw std::domain_error(std::string(op) + ": t falls in a hover; use the Z_n law instead");
  return {phase.n, phase.d};
}

}  // namespace

ZnDistribution ZnDistribution::make(long n, double s) {
  check_zn_args(n, s);
  ZnDistribution out;
  out.n = n;
  out.s = s;
  if (n == 1) {
    out.kind = Kind::PointMass;
    out.atom = s;
  } else if (n == 2) {
    out.kind = Kind::Arcsine;
    out.scale = 2.0 * s;
  } else {
    out.kind = Kind::TruncatedRayleigh;
    out.sigma = s * std::sqrt(0.5 * static_cast<double>(n));
    out.cutoff = static_cast<double>(n) * s;
  }
  return out;
}

double ZnDistribution::pdf(double z) const { return zn_pdf(n, s, z); }
double ZnDistribution::cdf(double z) const { return zn_cdf(n, s, z); }

double ZnDistribution::support_hi() const {
  switch (kind) {
    case Kind::PointMass: return atom;
    case Kind::Arcsine: return scale;
    case Kind::TruncatedRayleigh: return cutoff;
  }
  return 0.0;
}

double zn_pdf(long n, double s, double z) {
  check_zn_args(n, s);
  if (n == 1)
    throw AtomicDistributionError(
        "zn_pdf: Z_1 is a point mass at s; use the tagged distribution's atom");
  if (z < 0.0) return 0.0;
  if (n == 2) {
    if (z >= 2.0 * s) return 0.0;
    return 2.0 / (M_PI * std::sqrt(4.0 * s * s - z * z));
  }
  const double ns2 = static_cast<double>(n) * s * s;
  if (z > static_cast<double>(n) * s) return 0.0;
  return 2.0 * z * std::exp(-z * z / ns2) / (ns2 * (1.0 - std::exp(-static_cast<double>(n))));
}

double zn_cdf(long n, double s, double z) {
  check_zn_args(n, s);
  if (z < 0.0) return 0.0;
  if (n == 1) return z >= s ? 1.0 : 0.0;
  if (n == 2) {
    if (z >= 2.0 * s) return 1.0;
    return 2.0 / M_PI * std::asin(z / (2.0 * s));
  }
  if (z >= static_cast<double>(n) * s) return 1.0;
  const double ns2 = static_cast<double>(n) * s * s;
  return (1.0 - std::exp(-z * z / ns2)) / (1.0 - std::exp(-static_cast<double>(n)));
}

double ln_cdf(double l, double t, const MobilityConfig& mobility, const QuadratureSpec& spec) {
  const auto [n, d] = require_flight(t, mobility, "ln_cdf");
  if (l < 0.0) return 0.0;
  if (n == 0) return l >= d ? 1.0 : 0.0;  // Z_0 = 0: the first flight is deterministic
  if (d == 0.0) return zn_cdf(n, mobility.s, l);  // exact flight start
  const double s = mobility.s;
  if (n == 1) return cosine_law_cdf(l, s, d);

  double result = zn_cdf(n, s, l - d);
  const double lo = std::abs(l - d);
  const double hi = std::min(l + d, static_cast<double>(n) * s);
  if (hi > lo) {
    auto integrand = [&](double z) {
      return std::acos(clamp_unit((z * z + d * d - l * l) / (2.0 * z * d))) / M_PI *
             zn_pdf(n, s, z);
    };
    const double arcsine_edge[] = {2.0 * s};
    std::span<const double> cuts =
        n == 2 ? std::span<const double>(arcsine_edge) : std::span<const double>();
    result += integrate_piecewise_singular(integrand, lo, hi, cuts, spec);
  }
  return std::clamp(result, 0.0, 1.0);
}

double ln_pdf(double l, double t, const MobilityConfig& mobility, const QuadratureSpec& spec) {
  const auto [n, d] = require_flight(t, mobility, "ln_pdf");
  if (n == 0 || (n == 1 && d == 0.0))
    throw AtomicDistributionError("ln_pdf: displacement is deterministic here; use the atom");
  const double s = mobility.s;
  if (d == 0.0) return zn_pdf(n, s, l);
  if (n == 1) return cosine_law_pdf(l, s, d);

  if (l <= 0.0) return 0.0;
  const double lo = std::abs(l - d);
  const double hi = std::min(l + d, static_cast<double>(n) * s);
  if (hi <= lo) return 0.0;
  auto integrand = [&](double z) {
    const double inner = (l * l - (z - d) * (z - d)) * ((z + d) * (z + d) - l * l);
    if (inner <= 0.0) return 0.0;  // rounding at the window edge
    return 2.0 * l * zn_pdf(n, s, z) / (M_PI * std::sqrt(inner));
  };
  const double arcsine_edge[] = {2.0 * s};
  std::span<const double> cuts =
      n == 2 ? std::span<const double>(arcsine_edge) : std::span<const double>();
  return integrate_piecewise_singular(integrand, lo, hi, cuts, spec);
}

double DisplacementDistribution::continuous_pdf(double l, const QuadratureSpec& spec) const {
  switch (kind_) {
    case Kind::AtomsOnly:
      return 0.0;
    case Kind::Zn:
      return zn_pdf(n_, s_, l);
    case Kind::FlightSingle:
      return cosine_law_pdf(l, s_, d_);
    case Kind::FlightGeneral: {
      if (l <= support_lo_ || l >= support_hi_) return 0.0;
      const double lo = std::abs(l - d_);
      const double hi = std::min(l + d_, static_cast<double>(n_) * s_);
      if (hi <= lo) return 0.0;
      auto integrand = [&](double z) {
        const double inner = (l * l - (z - d_) * (z - d_)) * ((z + d_) * (z + d_) - l * l);
        if (inner <= 0.0) return 0.0;  // rounding at the window edge
        return 2.0 * l * zn_pdf(n_, s_, z) / (M_PI * std::sqrt(inner));
      };
      const double arcsine_edge[] = {2.0 * s_};
      std::span<const double> cuts =
          n_ == 2 ? std::span<const double>(arcsine_edge) : std::span<const double>();
      return integrate_piecewise_singular(integrand, lo, hi, cuts, spec);
    }
  }
  return 0.0;
}

double DisplacementDistribution::cdf(double l, const QuadratureSpec& spec) const {
  double total = 0.0;
  for (const Atom& atom : atoms_)
    if (atom.location <= l) total += atom.mass;

  switch (kind_) {
    case Kind::AtomsOnly:
      break;
    case Kind::Zn:
      total += zn_cdf(n_, s_, l);
      break;
    case Kind::FlightSingle:
      total += cosine_law_cdf(l, s_, d_);
      break;
    case Kind::FlightGeneral: {
      if (l <= support_lo_) break;
      if (l >= support_hi_) {
        total += 1.0;
        break;
      }
      total += zn_cdf(n_, s_, l - d_);
      const double lo = std::abs(l - d_);
      const double hi = std::min(l + d_, static_cast<double>(n_) * s_);
      if (hi > lo) {
        auto integrand = [&](double z) {
          return std::acos(clamp_unit((z * z + d_ * d_ - l * l) / (2.0 * z * d_))) / M_PI *
                 zn_pdf(n_, s_, z);
        };
        const double arcsine_edge[] = {2.0 * s_};
        std::span<const double> cuts =
            n_ == 2 ? std::span<const double>(arcsine_edge) : std::span<const double>();
        total += integrate_piecewise_singular(integrand, lo, hi, cuts, spec);
      }
      break;
    }
  }
  return std::clamp(total, 0.0, 1.0);
}

double DisplacementDistribution::max_support() const {
  double hi = has_continuous() ? support_hi_ : 0.0;
  for (const Atom& atom : atoms_) hi = std::max(hi, atom.location);
  return hi;
}

std::vector<double> DisplacementDistribution::breakpoints() const {
  std::vector<double> cuts;
  const double ns = static_cast<double>(n_) * s_;
  switch (kind_) {
    case Kind::AtomsOnly:
      break;
    case Kind::Zn:
      cuts = {support_lo_, support_hi_};
      break;
    case Kind::FlightSingle:
      cuts = {support_lo_, support_hi_};
      break;
    case Kind::FlightGeneral:
      cuts = {support_lo_, d_, ns - d_, support_hi_};
      if (n_ == 2) {
        cuts.push_back(std::abs(2.0 * s_ - d_));
        cuts.push_back(2.0 * s_ + d_);
      }
      break;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

double DisplacementDistribution::total_mass(const QuadratureSpec& spec) const {
  double total = 0.0;
  for (const Atom& atom : atoms_) total += atom.mass;
  if (has_continuous()) {
    const std::vector<double> cuts = breakpoints();
    // The density itself may be a quadrature; keep its tolerance well below
    // the outer one so the outer pass does not chase inner noise.
    QuadratureSpec outer = spec;
    outer.rel_tol = std::max(spec.rel_tol, 1e-7);
    outer.abs_tol = std::max(spec.abs_tol, 1e-9);
    const QuadratureSpec inner = outer.relaxed(1e-2);
    total += integrate_piecewise_singular(
        [&](double l) { return continuous_pdf(l, inner); }, support_lo_, support_hi_, cuts,
        outer);
  }
  return total;
}

DisplacementDistribution displacement_distribution(double t, const MobilityConfig& mobility) {
  const Phase phase = phase_at(mobility, t);
  DisplacementDistribution dist;
  dist.phase_ = phase;
  dist.t_ = t;
  dist.s_ = mobility.s;
  dist.n_ = phase.n;
  dist.d_ = phase.flying ? phase.d : 0.0;

  const long n = phase.n;
  const double s = mobility.s;
  const bool at_flight_start = phase.flying && phase.d == 0.0;

  if (!phase.flying || at_flight_start || n == 0) {
    // Hover n (or the degenerate flight start, where the law is still Z_n's),
    // or the deterministic first flight.
    const long eff = n;
    if (eff == 0) {
      dist.kind_ = DisplacementDistribution::Kind::AtomsOnly;
      dist.atoms_ = {{phase.flying ? phase.d : 0.0, 1.0}};
    } else if (eff == 1) {
      dist.kind_ = DisplacementDistribution::Kind::AtomsOnly;
      dist.atoms_ = {{s, 1.0}};
    } else {
      dist.kind_ = DisplacementDistribution::Kind::Zn;
      dist.support_lo_ = 0.0;
      dist.support_hi_ = static_cast<double>(eff) * s;
    }
    return dist;
  }

  if (n == 1) {
    dist.kind_ = DisplacementDistribution::Kind::FlightSingle;
    dist.support_lo_ = std::abs(s - phase.d);
    dist.support_hi_ = s + phase.d;
    return dist;
  }
  dist.kind_ = DisplacementDistribution::Kind::FlightGeneral;
  dist.support_lo_ = 0.0;
  dist.support_hi_ = static_cast<double>(n) * s + phase.d;
  return dist;
}

}  // namespace srwpnet
