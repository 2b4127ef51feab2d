#pragma once

#include <mutex>
#include <span>
#include <vector>

#include "srwpnet/rng.hpp"
#include "srwpnet/types.hpp"

namespace srwpnet {

/// Where a drone is within its hover/flight cycle at a queried time.
struct Phase {
  long n = 0;              // completed flights
  bool flying = false;     // hovering otherwise
  double d = 0.0;          // distance covered in the current flight; 0 when hovering

  bool operator==(const Phase&) const = default;
};

/// Cycle position at time t. Cycle length C = w + s/v; the first w seconds
/// of each cycle are the hover, the rest the flight. Boundaries belong to
/// the phase that starts there (half-open intervals).
Phase phase_at(const MobilityConfig& mobility, double t);

/// Net displacement after flights of length s along the given bearings:
/// s * |sum of unit vectors|. An empty list yields 0 (no flight completed).
double net_displacement(std::span<const double> bearings, double s);

/// Full-quadrant angle of the summed flight vector, in [-pi, pi).
/// Undefined when the net displacement is zero.
double bearing_of_net(std::span<const double> bearings);

/// One drone's motion: an origin plus i.i.d. uniform flight bearings drawn
/// lazily from an owned rng stream. Queries at any time are consistent and
/// reproducible; lazy extension is internally synchronized.
class Trajectory {
 public:
  Trajectory(PlanarPoint origin, MobilityConfig mobility, Pcg32 rng);

  PlanarPoint origin() const { return origin_; }
  const MobilityConfig& mobility() const { return mobility_; }

  /// Position at time t >= 0.
  PlanarPoint position_at(double t) const;

  /// Net displacement from the origin at time t: |position_at(t) - origin|.
  double displacement_at(double t) const;

  /// Bearing of the k-th flight (0-based), materializing as needed.
  double bearing(std::size_t k) const;

  /// Materializes the first `count` bearings (e.g. before sharing across
  /// threads).
  void ensure_bearings(std::size_t count) const;

 private:
  PlanarPoint origin_;
  MobilityConfig mobility_;
  mutable Pcg32 rng_;
  mutable std::vector<double> bearings_;
  // Cumulative endpoint after each completed flight; cum_[k] is the position
  // offset after k flights, so cum_[0] = (0, 0).
  mutable std::vector<PlanarPoint> cum_;
  mutable std::mutex mutex_;
};

/// Straight-line approach of the serving drone: horizontal distance
/// [u0 - v t]^+.
struct ServingTrack {
  double u0 = 0.0;  // initial serving horizontal distance (m)
  double v = 0.0;   // speed (m/s)
};

double serving_distance_at(const ServingTrack& track, double t);

}  // namespace srwpnet
