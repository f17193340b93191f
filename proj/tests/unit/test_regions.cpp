#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ntnsim/errors.hpp"
#include "ntnsim/pointgen.hpp"
#include "ntnsim/regions.hpp"

using namespace ntnsim;
using std::numbers::pi;

namespace {
const EarthConstants kEarth;
constexpr double kRs = 6921.0;

// Independent oracle: march along the beam edge from the user until the
// ray leaves the sphere of radius R_s, by bisection on |p| - R_s.
double beam_edge_distance(double psi, double rs) {
  const double re = kEarth.earth_radius_km;
  const double sx = std::sin(psi / 2);
  const double cz = std::cos(psi / 2);
  auto radius_at = [&](double d) { return std::hypot(d * sx, re + d * cz); };
  double lo = 0.0;
  double hi = 4 * rs;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (radius_at(mid) < rs ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("beam to theta matches a ray-marching oracle") {
  for (double psi : {pi / 24, pi / 12, pi / 4, pi / 2, 0.9 * pi}) {
    const auto r = theta_max_from_beam(psi, kRs, kEarth);
    const double d = beam_edge_distance(psi, kRs);
    REQUIRE(r.d_max.has_value());
    CHECK(*r.d_max == doctest::Approx(d).epsilon(1e-10));
    const double theta = std::atan2(d * std::sin(psi / 2), kEarth.earth_radius_km + d * std::cos(psi / 2));
    CHECK(r.theta_max == doctest::Approx(theta).epsilon(1e-10));
  }
}

TEST_CASE("beam limits") {
  const auto narrow = theta_max_from_beam(1e-9, kRs, kEarth);
  CHECK(*narrow.d_max == doctest::Approx(kRs - kEarth.earth_radius_km).epsilon(1e-12));
  CHECK(narrow.theta_max < 1e-9);

  const auto horizon = theta_max_from_beam(pi, kRs, kEarth);
  CHECK(*horizon.d_max == doctest::Approx(std::sqrt(kRs * kRs - 6371.0 * 6371.0)).epsilon(1e-13));
  CHECK(horizon.theta_max == doctest::Approx(std::acos(6371.0 / kRs)).epsilon(1e-13));

  CHECK_THROWS_AS(theta_max_from_beam(1.01 * pi, kRs, kEarth), DomainError);
  CHECK_THROWS_AS(theta_max_from_beam(0.0, kRs, kEarth), DomainError);
  CHECK_THROWS_AS(theta_max_from_beam(0.5, 6000.0, kEarth), DomainError);
}

TEST_CASE("beam round trip at pi/12") {
  const double t = theta_max_from_beam(pi / 12, kRs, kEarth).theta_max;
  CHECK(std::abs(beam_from_theta_max(t, kRs, kEarth) - pi / 12) / (pi / 12) < 1e-12);
}

TEST_CASE("inverse beam mapping") {
  CHECK(beam_from_theta_max(los_theta_max(kRs, kEarth), kRs, kEarth) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(beam_from_theta_max(1e-10, kRs, kEarth) < 1e-6);
  CHECK_THROWS_AS(beam_from_theta_max(0.5, kRs, kEarth), DomainError);
}

TEST_CASE("round trips over 100-point grids") {
  const double los = los_theta_max(kRs, kEarth);
  for (int i = 1; i <= 100; ++i) {
    const double f = i / 100.0;
    const double psi = f * pi;
    CHECK(std::abs(beam_from_theta_max(theta_max_from_beam(psi, kRs, kEarth).theta_max, kRs, kEarth) - psi) / psi <
          1e-12);
    const double t = f * los;
    CHECK(std::abs(theta_max_from_beam(beam_from_theta_max(t, kRs, kEarth), kRs, kEarth).theta_max - t) / t < 1e-12);
    const double a = f * 2 * pi * kRs * kRs;
    CHECK(std::abs(cap_area(kRs, theta_max_from_area(a, kRs)) - a) / a < 1e-12);
    CHECK(std::abs(theta_max_from_area(cap_area(kRs, t), kRs) - t) / t < 1e-12);
  }
}

TEST_CASE("area mapping") {
  CHECK(theta_max_from_area(2 * pi * kRs * kRs, kRs) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(theta_max_from_area(1e-12, kRs) < 1e-6);
  CHECK_THROWS_AS(theta_max_from_area(0.0, kRs), DomainError);
  CHECK_THROWS_AS(theta_max_from_area(7 * pi * kRs * kRs, kRs), DomainError);
}

TEST_CASE("mappings are strictly increasing") {
  double prev_beam = 0.0;
  double prev_area = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double b = theta_max_from_beam(i * pi / 50, kRs, kEarth).theta_max;
    const double a = theta_max_from_area(i * 1e5, kRs);
    CHECK(b > prev_beam);
    CHECK(a > prev_area);
    prev_beam = b;
    prev_area = a;
  }
}

TEST_CASE("resolve and describe") {
  CHECK(resolve_region(LosRegion{}, kRs, kEarth).theta_max == los_theta_max(kRs, kEarth));
  CHECK_FALSE(resolve_region(LosRegion{}, kRs, kEarth).d_max.has_value());
  CHECK(resolve_region(BeamRegion{pi / 2}, kRs, kEarth).d_max.has_value());
  CHECK(resolve_region(AreaRegion{1e6}, kRs, kEarth).theta_max == theta_max_from_area(1e6, kRs));
  CHECK(describe(LosRegion{}) == "los");
  CHECK(describe(BeamRegion{0.5}).rfind("beam:", 0) == 0);
  CHECK(describe(AreaRegion{10}).rfind("area:", 0) == 0);
}
