#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "srwpnet/displacement.hpp"
#include "srwpnet/mobility.hpp"
#include "srwpnet/rng.hpp"
#include "srwpnet/stats.hpp"

using namespace srwpnet;

namespace {

const MobilityConfig kMobility{12.5, 5.0, 250.0};  // cycle = 25 s

// Time at which phase_at reports (n completed flights, distance d flown).
double time_for(long n, double d) {
  return static_cast<double>(n) * kMobility.cycle() + kMobility.w + d / kMobility.v;
}

std::vector<double> sample_zn(long n, long count, Pcg32& rng) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    double cx = 0.0, cy = 0.0;
    for (long k = 0; k < n; ++k) {
      const double theta = uniform_angle(rng);
      cx += std::cos(theta);
      cy += std::sin(theta);
    }
    out[static_cast<std::size_t>(i)] = kMobility.s * std::hypot(cx, cy);
  }
  return out;
}

}  // namespace

TEST_CASE("ZnDistribution tags by flight count") {
  const auto z1 = ZnDistribution::make(1, 250.0);
  CHECK(z1.kind == ZnDistribution::Kind::PointMass);
  CHECK(z1.atom == doctest::Approx(250.0));

  const auto z2 = ZnDistribution::make(2, 250.0);
  CHECK(z2.kind == ZnDistribution::Kind::Arcsine);
  CHECK(z2.scale == doctest::Approx(500.0));

  const auto z5 = ZnDistribution::make(5, 250.0);
  CHECK(z5.kind == ZnDistribution::Kind::TruncatedRayleigh);
  CHECK(z5.sigma == doctest::Approx(250.0 * std::sqrt(2.5)));
  CHECK(z5.cutoff == doctest::Approx(1250.0));
}

TEST_CASE("zn_pdf values and atomic guard") {
  CHECK_THROWS_AS(zn_pdf(1, 250.0, 100.0), AtomicDistributionError);
  CHECK(zn_pdf(2, 250.0, 0.0) == doctest::Approx(2.0 / (500.0 * M_PI)).epsilon(1e-12));
  CHECK(zn_pdf(2, 250.0, 600.0) == 0.0);
  CHECK(zn_pdf(3, 250.0, 800.0) == 0.0);
  CHECK(zn_pdf(3, 250.0, -1.0) == 0.0);
}

TEST_CASE("zn_pdf normalizes for n >= 2") {
  for (long n : {2L, 3L, 7L, 50L}) {
    const double hi = static_cast<double>(n) * 250.0;
    const double mass = integrate_singular([n](double z) { return zn_pdf(n, 250.0, z); },
                                           0.0, n == 2 ? 500.0 : hi)
                            .value;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("zn_cdf closed forms") {
  CHECK(zn_cdf(2, 250.0, 500.0) == doctest::Approx(1.0));
  CHECK(zn_cdf(2, 250.0, 250.0 * std::sqrt(2.0)) == doctest::Approx(0.5));
  CHECK(zn_cdf(1, 250.0, 249.9) == 0.0);
  CHECK(zn_cdf(1, 250.0, 250.0) == 1.0);
  CHECK(zn_cdf(5, 250.0, 1250.0) == doctest::Approx(1.0));
  CHECK(zn_cdf(5, 250.0, -3.0) == 0.0);
}

TEST_CASE("zn_cdf sits at one half on the Monte Carlo median of Z_5") {
  Pcg32 rng(101);
  auto samples = sample_zn(5, 100000, rng);
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  const double median = samples[samples.size() / 2];
  CHECK(zn_cdf(5, kMobility.s, median) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("ln_cdf anchors for the single-completed-flight case") {
  const double t = time_for(1, 125.0);  // n = 1, d = 125
  const double s = kMobility.s;
  CHECK(ln_cdf(std::sqrt(s * s + 125.0 * 125.0), t, kMobility) == doctest::Approx(0.5));
  CHECK(ln_cdf(375.0, t, kMobility) == doctest::Approx(1.0));
  CHECK(ln_cdf(376.0, t, kMobility) == doctest::Approx(1.0));
  CHECK(ln_cdf(125.0, t, kMobility) == doctest::Approx(0.0));
  CHECK_THROWS_AS(ln_cdf(100.0, 3.0, kMobility), std::domain_error);  // hover
}

TEST_CASE("ln_pdf support for the single-completed-flight case") {
  const double t = time_for(1, 125.0);
  CHECK(ln_pdf(124.9, t, kMobility) == 0.0);
  CHECK(ln_pdf(375.1, t, kMobility) == 0.0);
  CHECK(ln_pdf(200.0, t, kMobility) > 0.0);
  CHECK(ln_pdf(370.0, t, kMobility) > 0.0);
}

TEST_CASE("ln_pdf integrates to one") {
  for (auto [n, d] : std::vector<std::pair<long, double>>{{1, 125.0}, {2, 187.5}, {3, 100.0}}) {
    const double t = time_for(n, d);
    const auto dist = displacement_distribution(t, kMobility);
    CHECK(dist.total_mass() == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("ln_pdf matches the central difference of ln_cdf") {
  const double t = time_for(3, 100.0);
  for (double l : {300.0, 500.0, 700.0}) {
    const double h = 0.1;
    const double fd = (ln_cdf(l + h, t, kMobility) - ln_cdf(l - h, t, kMobility)) / (2.0 * h);
    const double pdf = ln_pdf(l, t, kMobility);
    CHECK(pdf == doctest::Approx(fd).epsilon(1e-3));
  }
}

TEST_CASE("ln_cdf matches Monte Carlo draws of the in-flight triangle law") {
  // Z_3 is sampled exactly from the walk; Phi is uniform. The analytic side
  // uses the closed-form truncated-Rayleigh stand-in for the three-step walk,
  // whose true KS distance from the exact law is ~0.08; the bound here is a
  // regression guard on top of that.
  const long n = 3;
  const double d = 100.0;
  const double t = time_for(n, d);
  Pcg32 rng(202);

  const long count = 100000;
  std::vector<double> ls(count);
  for (long i = 0; i < count; ++i) {
    double cx = 0.0, cy = 0.0;
    for (long k = 0; k < n; ++k) {
      const double theta = uniform_angle(rng);
      cx += std::cos(theta);
      cy += std::sin(theta);
    }
    const double z = kMobility.s * std::hypot(cx, cy);
    const double phi = uniform_angle(rng);
    ls[static_cast<std::size_t>(i)] =
        std::sqrt(z * z + d * d - 2.0 * z * d * std::cos(phi));
  }

  const double ks =
      ks_statistic(std::move(ls), [&](double l) { return ln_cdf(l, t, kMobility); });
  CHECK(ks < 0.1);
  CHECK(ln_cdf(300.0, t, kMobility) > 0.0);
}

TEST_CASE("ln_cdf is non-decreasing") {
  Pcg32 rng(303);
  for (int rep = 0; rep < 10; ++rep) {
    const long n = 1 + static_cast<long>(uniform(rng, 0.0, 5.99));
    const double d = uniform(rng, 1.0, kMobility.s - 1.0);
    const double t = time_for(n, d);
    double prev = -1.0;
    const double hi = static_cast<double>(n) * kMobility.s + d + 10.0;
    for (int i = 0; i <= 200; ++i) {
      const double l = hi * static_cast<double>(i) / 200.0;
      const double f = ln_cdf(l, t, kMobility);
      CHECK(f >= prev - 1e-9);
      prev = f;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("displacement_distribution dispatches atoms in the early phases") {
  auto at3 = displacement_distribution(3.0, kMobility);
  REQUIRE(at3.atoms().size() == 1);
  CHECK(at3.atoms()[0].location == doctest::Approx(0.0));
  CHECK(at3.atoms()[0].mass == doctest::Approx(1.0));
  CHECK_FALSE(at3.has_continuous());

  auto at15 = displacement_distribution(15.0, kMobility);
  REQUIRE(at15.atoms().size() == 1);
  CHECK(at15.atoms()[0].location == doctest::Approx(125.0));

  auto at27 = displacement_distribution(27.0, kMobility);
  REQUIRE(at27.atoms().size() == 1);
  CHECK(at27.atoms()[0].location == doctest::Approx(250.0));
}

TEST_CASE("displacement_distribution mass and support stay within bounds") {
  for (double t : {3.0, 15.0, 27.0, 40.0, 57.0, 70.0, 88.0, 130.0, 170.0, 300.0}) {
    const auto dist = displacement_distribution(t, kMobility);
    CHECK(dist.total_mass() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(dist.max_support() <= kMobility.v * t + 1e-9);
    CHECK(dist.cdf(kMobility.v * t + 1.0) == doctest::Approx(1.0));
    CHECK(dist.cdf(-1.0) == 0.0);
  }
}

TEST_CASE("displacement_distribution handles the flight-start boundary") {
  // At exactly t = n C + w the flight has covered no distance yet, so the
  // law is still the hover one.
  const double t = 2.0 * kMobility.cycle() + kMobility.w;
  const auto dist = displacement_distribution(t, kMobility);
  CHECK(dist.has_continuous());
  CHECK(dist.cdf(250.0 * std::sqrt(2.0)) == doctest::Approx(0.5).epsilon(1e-9));
}
