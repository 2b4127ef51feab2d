#pragma once

#include <vector>

#include "srwpnet/mobility.hpp"
#include "srwpnet/quadrature.hpp"
#include "srwpnet/types.hpp"

namespace srwpnet {

/// Thrown on a pointwise density query against a distribution (or branch)
/// that is a point mass; callers must use the atom representation instead.
class AtomicDistributionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Law of the net displacement after n completed flights of length s:
/// a point mass at s for n = 1, an arcsine law on [0, 2s] for n = 2, and a
/// truncated Rayleigh with scale s*sqrt(n/2) on [0, n s] for n >= 3.
struct ZnDistribution {
  enum class Kind { PointMass, Arcsine, TruncatedRayleigh };

  Kind kind = Kind::PointMass;
  long n = 1;
  double s = 0.0;
  double atom = 0.0;    // PointMass: location (= s)
  double scale = 0.0;   // Arcsine: support end (= 2 s)
  double sigma = 0.0;   // TruncatedRayleigh: scale (= s sqrt(n/2))
  double cutoff = 0.0;  // TruncatedRayleigh: support end (= n s)

  static ZnDistribution make(long n, double s);

  double pdf(double z) const;  // throws AtomicDistributionError for PointMass
  double cdf(double z) const;
  double support_hi() const;
};

double zn_pdf(long n, double s, double z);
double zn_cdf(long n, double s, double z);

/// CDF of the displacement while the drone is in flight n+1, i.e. of
/// sqrt(Z_n^2 + d^2 - 2 Z_n d cos(Phi)) with Phi uniform. Requires that
/// phase_at(t) is a flight; hover times use zn_cdf.
double ln_cdf(double l, double t, const MobilityConfig& mobility,
              const QuadratureSpec& spec = {});

/// Density matching ln_cdf. Zero outside the open support; endpoint values
/// are never needed because every consumer integrates.
double ln_pdf(double l, double t, const MobilityConfig& mobility,
              const QuadratureSpec& spec = {});

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Mixed distribution of the net displacement L(t): explicit point masses
/// plus, from the second flight on, a continuous component. Exactly one
/// phase is active at any t, so the representation is a dispatch, never a
/// truncated series.
class DisplacementDistribution {
 public:
  Phase phase() const { return phase_; }
  double time() const { return t_; }

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool has_continuous() const { return kind_ != Kind::AtomsOnly; }

  /// Density of the continuous component (0 if there is none).
  double continuous_pdf(double l, const QuadratureSpec& spec = {}) const;

  /// Total CDF, atoms included; right-closed (an atom at x counts in cdf(x)).
  double cdf(double l, const QuadratureSpec& spec = {}) const;

  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }

  /// Upper end of the overall support, atoms included.
  double max_support() const;

  /// Abscissae where the continuous density has edges or kinks (support
  /// endpoints included); integrate piecewise between them.
  std::vector<double> breakpoints() const;

  /// Atom masses plus the numerically integrated continuous mass.
  double total_mass(const QuadratureSpec& spec = {}) const;

  /// Flight parameters (n, d) when the continuous component stems from an
  /// in-flight law with n >= 2 completed flights.
  bool is_general_flight() const { return kind_ == Kind::FlightGeneral; }

  long flights() const { return n_; }
  double flight_distance() const { return d_; }
  double step_length() const { return s_; }

 private:
  enum class Kind { AtomsOnly, Zn, FlightSingle, FlightGeneral };

  friend DisplacementDistribution displacement_distribution(double, const MobilityConfig&);

  Kind kind_ = Kind::AtomsOnly;
  Phase phase_;
  double t_ = 0.0;
  long n_ = 0;     // completed flights backing the law
  double d_ = 0.0; // current-flight distance (flight kinds only)
  double s_ = 0.0;
  std::vector<Atom> atoms_;
  double support_lo_ = 0.0;
  double support_hi_ = 0.0;
};

/// Law of L(t) dispatched on phase_at(t).
DisplacementDistribution displacement_distribution(double t, const MobilityConfig& mobility);

}  // namespace srwpnet
