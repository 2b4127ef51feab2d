#include "srwpnet/mobility.hpp"

#include <cmath>
#include <stdexcept>

#include "srwpnet/geometry.hpp"

namespace srwpnet {

Phase phase_at(const MobilityConfig& mobility, double t) {
  mobility.validate();
  if (t < 0.0) throw std::domain_error("phase_at: time must be non-negative");

  const double cycle = mobility.cycle();
  double n = std::floor(t / cycle);
  double offset = t - n * cycle;
  // Floating-point floor can land just below a cycle boundary.
  if (offset >= cycle) {
    n += 1.0;
    offset -= cycle;
  }
  if (offset < mobility.w) return {static_cast<long>(n), false, 0.0};
  return {static_cast<long>(n), true, mobility.v * (offset - mobility.w)};
}

double net_displacement(std::span<const double> bearings, double s) {
  if (!(s > 0.0)) throw std::domain_error("net_displacement: s must be positive");
  double cx = 0.0, cy = 0.0;
  for (double theta : bearings) {
    cx += std::cos(theta);
    cy += std::sin(theta);
  }
  return s * std::hypot(cx, cy);
}

double bearing_of_net(std::span<const double> bearings) {
  if (bearings.empty()) throw std::domain_error("bearing_of_net: needs at least one flight");
  double cx = 0.0, cy = 0.0;
  for (double theta : bearings) {
    cx += std::cos(theta);
    cy += std::sin(theta);
  }
  // Resolves cancellation residue: a net displacement this far below the
  // per-flight scale is a zero vector.
  if (std::hypot(cx, cy) < 1e-12 * static_cast<double>(bearings.size()))
    throw std::domain_error("bearing_of_net: zero net displacement has no bearing");
  return wrap_angle(std::atan2(cy, cx));
}

Trajectory::Trajectory(PlanarPoint origin, MobilityConfig mobility, Pcg32 rng)
    : origin_(origin), mobility_(mobility), rng_(rng) {
  mobility_.validate();
  cum_.push_back({0.0, 0.0});
}

void Trajectory::ensure_bearings(std::size_t count) const {
  std::lock_guard<std::mutex> lock(mutex_);
  while (bearings_.size() < count) {
    const double theta = uniform_angle(rng_);
    bearings_.push_back(theta);
    const PlanarPoint last = cum_.back();
    cum_.push_back({last.x + mobility_.s * std::cos(theta),
                    last.y + mobility_.s * std::sin(theta)});
  }
}

double Trajectory::bearing(std::size_t k) const {
  ensure_bearings(k + 1);
  return bearings_[k];
}

PlanarPoint Trajectory::position_at(double t) const {
  const Phase phase = phase_at(mobility_, t);
  const auto n = static_cast<std::size_t>(phase.n);
  ensure_bearings(phase.flying ? n + 1 : n);

  PlanarPoint pos = origin_ + cum_[n];
  if (phase.flying) {
    const double theta = bearings_[n];
    pos.x += phase.d * std::cos(theta);
    pos.y += phase.d * std::sin(theta);
  }
  return pos;
}

double Trajectory::displacement_at(double t) const {
  return (position_at(t) - origin_).norm();
}

double serving_distance_at(const ServingTrack& track, double t) {
  if (t < 0.0) throw std::domain_error("serving_distance_at: time must be non-negative");
  if (track.u0 < 0.0) throw std::domain_error("serving_distance_at: u0 must be non-negative");
  return std::max(track.u0 - track.v * t, 0.0);
}

}  // namespace srwpnet
