#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "srwpnet/geometry.hpp"
#include "srwpnet/mobility.hpp"
#include "srwpnet/rng.hpp"

using namespace srwpnet;

namespace {
const MobilityConfig kMobility{12.5, 5.0, 250.0};  // cycle = 25 s
}

TEST_CASE("phase_at walks the hover/flight cycle") {
  Phase p = phase_at(kMobility, 3.0);
  CHECK(p.n == 0);
  CHECK_FALSE(p.flying);

  p = phase_at(kMobility, 15.0);
  CHECK(p.n == 0);
  CHECK(p.flying);
  CHECK(p.d == doctest::Approx(125.0));

  p = phase_at(kMobility, 27.0);
  CHECK(p.n == 1);
  CHECK_FALSE(p.flying);

  CHECK_THROWS_AS(phase_at(kMobility, -1.0), std::domain_error);
}

TEST_CASE("phase boundaries belong to the later phase") {
  // Hover start at exactly n * C, flight start at exactly n * C + w.
  Phase p = phase_at(kMobility, 25.0);
  CHECK(p.n == 1);
  CHECK_FALSE(p.flying);

  p = phase_at(kMobility, 5.0);
  CHECK(p.n == 0);
  CHECK(p.flying);
  CHECK(p.d == doctest::Approx(0.0));
}

TEST_CASE("phase flight distance matches the closed form") {
  // d_n(t) = v t - n s - (n + 1) v w on flight intervals.
  for (double t : {8.0, 15.0, 24.9, 31.0, 49.0, 107.3}) {
    const Phase p = phase_at(kMobility, t);
    if (!p.flying) continue;
    const double expected = kMobility.v * t - static_cast<double>(p.n) * kMobility.s -
                            static_cast<double>(p.n + 1) * kMobility.v * kMobility.w;
    CHECK(p.d == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("net_displacement basics") {
  const double s = 250.0;
  const double one[] = {1.234};
  CHECK(net_displacement(one, s) == doctest::Approx(s));
  const double cancel[] = {0.0, M_PI};
  CHECK(net_displacement(cancel, s) == doctest::Approx(0.0).epsilon(1e-12));
  const double right[] = {0.0, M_PI / 2.0};
  CHECK(net_displacement(right, s) == doctest::Approx(s * std::sqrt(2.0)));
  CHECK(net_displacement({}, s) == 0.0);
  CHECK(net_displacement(one, s) <= 1 * s + 1e-12);
}

TEST_CASE("bearing_of_net quadrants and errors") {
  const double diag[] = {0.0, M_PI / 2.0};
  CHECK(bearing_of_net(diag) == doctest::Approx(M_PI / 4.0));
  const double west[] = {M_PI};
  CHECK(bearing_of_net(west) == doctest::Approx(-M_PI));
  const double third[] = {M_PI / 3.0};
  CHECK(bearing_of_net(third) == doctest::Approx(M_PI / 3.0));
  CHECK_THROWS_AS(bearing_of_net({}), std::domain_error);
  const double cancel[] = {0.0, M_PI};
  CHECK_THROWS_AS(bearing_of_net(cancel), std::domain_error);
}

TEST_CASE("position_at hits the documented anchors") {
  Pcg32 rng(11);
  Trajectory traj({10.0, -4.0}, kMobility, rng);

  const PlanarPoint at0 = traj.position_at(0.0);
  CHECK(at0.x == doctest::Approx(10.0));
  CHECK(at0.y == doctest::Approx(-4.0));

  const PlanarPoint hover_end = traj.position_at(kMobility.w);
  CHECK(hover_end.x == doctest::Approx(10.0));
  CHECK(hover_end.y == doctest::Approx(-4.0));

  const double t1 = kMobility.w + kMobility.s / kMobility.v;
  const PlanarPoint after_first = traj.position_at(t1);
  const double theta = traj.bearing(0);
  CHECK(after_first.x == doctest::Approx(10.0 + kMobility.s * std::cos(theta)));
  CHECK(after_first.y == doctest::Approx(-4.0 + kMobility.s * std::sin(theta)));
}

TEST_CASE("position is constant during hovers") {
  Pcg32 rng(17);
  Trajectory traj({0.0, 0.0}, kMobility, rng);
  for (long n = 0; n < 6; ++n) {
    const double start = static_cast<double>(n) * kMobility.cycle();
    const PlanarPoint a = traj.position_at(start);
    const PlanarPoint b = traj.position_at(start + 0.5 * kMobility.w);
    const PlanarPoint c = traj.position_at(start + kMobility.w * 0.999);
    CHECK((a - b).norm() == doctest::Approx(0.0));
    CHECK((a - c).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("displacement agrees with the triangle form built from Z_n, Psi_n, Theta_n+1") {
  // Two independent computation paths: the vector sum inside Trajectory and
  // the cosine law on (Z_n, Phi_n).
  Pcg32 rng(23);
  for (int rep = 0; rep < 40; ++rep) {
    Trajectory traj({0.0, 0.0}, kMobility, rng);
    const double t = uniform(rng, 0.0, 200.0);
    const Phase phase = phase_at(kMobility, t);
    const double via_vectors = traj.displacement_at(t);

    std::vector<double> bearings;
    for (long k = 0; k < phase.n; ++k) bearings.push_back(traj.bearing(static_cast<std::size_t>(k)));
    const double z = net_displacement(bearings, kMobility.s);

    double expected;
    if (!phase.flying) {
      expected = z;
    } else if (phase.n == 0) {
      expected = phase.d;
    } else if (z == 0.0) {
      expected = phase.d;
    } else {
      const double psi = bearing_of_net(bearings);
      const double phi = traj.bearing(static_cast<std::size_t>(phase.n)) - psi - M_PI;
      expected = std::sqrt(z * z + phase.d * phase.d - 2.0 * z * phase.d * std::cos(phi));
    }
    CHECK(via_vectors == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("net displacement never exceeds distance traveled") {
  Pcg32 rng(29);
  for (int rep = 0; rep < 30; ++rep) {
    Trajectory traj({0.0, 0.0}, kMobility, rng);
    for (double t : {1.0, 7.5, 26.0, 55.0, 90.0, 131.0, 222.2}) {
      CHECK(traj.displacement_at(t) <= kMobility.v * t + 1e-9);
      const Phase p = phase_at(kMobility, t);
      const double path_len = static_cast<double>(p.n) * kMobility.s + (p.flying ? p.d : 0.0);
      CHECK(traj.displacement_at(t) <= path_len + 1e-9);
    }
  }
}

TEST_CASE("trajectories are reproducible from the seed") {
  Trajectory a({1.0, 2.0}, kMobility, Pcg32(99, 3));
  Trajectory b({1.0, 2.0}, kMobility, Pcg32(99, 3));
  for (double t : {10.0, 33.0, 100.0, 260.0}) {
    const PlanarPoint pa = a.position_at(t);
    const PlanarPoint pb = b.position_at(t);
    CHECK(pa.x == pb.x);
    CHECK(pa.y == pb.y);
  }
}

TEST_CASE("serving distance shrinks linearly then clamps") {
  const ServingTrack track{500.0, 12.5};
  CHECK(serving_distance_at(track, 0.0) == doctest::Approx(500.0));
  CHECK(serving_distance_at(track, 8.0) == doctest::Approx(400.0));
  CHECK(serving_distance_at(track, 40.0) == 0.0);
  CHECK(serving_distance_at(track, 41.0) == 0.0);
  CHECK(serving_distance_at(track, 400.0) == 0.0);
  CHECK_THROWS_AS(serving_distance_at(track, -0.5), std::domain_error);
}

TEST_CASE("wrap_angle conventions") {
  CHECK(wrap_angle(M_PI) == doctest::Approx(-M_PI));
  CHECK(wrap_angle(-M_PI) == doctest::Approx(-M_PI));
  CHECK(wrap_angle(3.0 * M_PI / 2.0) == doctest::Approx(-M_PI / 2.0));
  CHECK(wrap_angle_positive(-M_PI / 2.0) == doctest::Approx(3.0 * M_PI / 2.0));
}
