#include "ntnsim/regions.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ntnsim/errors.hpp"
#include "ntnsim/pointgen.hpp"

namespace ntnsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_above_earth(double sphere_radius_km, const EarthConstants& c) {
  if (!(sphere_radius_km > c.earth_radius_km)) {
    throw DomainError(fmt::format("sphere radius {} must exceed the Earth radius {}", sphere_radius_km,
                                  c.earth_radius_km));
  }
}

}  // namespace

ResolvedRegion theta_max_from_beam(double psi, double sphere_radius_km, const EarthConstants& c) {
  require_above_earth(sphere_radius_km, c);
  if (!(psi > 0.0 && psi < kTwoPi)) throw DomainError(fmt::format("beam angle {} outside (0, 2 pi)", psi));
  if (psi > std::numbers::pi) {
    throw DomainError(fmt::format("beam angle {} sees past the horizon (psi > pi)", psi));
  }
  const double re = c.earth_radius_km;
  const double rs = sphere_radius_km;
  // cos(pi - psi/2) = -cos(psi/2) =: -k. Positive root of the quadratic,
  // d = -R_e k + sqrt(R_e^2 k^2 + R_s^2 - R_e^2), written without the
  // cancellation that hurts narrow beams.
  const double k = std::cos(0.5 * psi);
  const double d_max = (rs - re) * (rs + re) / (re * k + std::sqrt(re * re * k * k + (rs - re) * (rs + re)));
  // Farthest in-lobe point sits at (d sin(psi/2), 0, R_e + d cos(psi/2));
  // its central angle equals arccos((R_e^2 + R_s^2 - d^2) / (2 R_e R_s)).
  const double theta_max = std::atan2(d_max * std::sin(0.5 * psi), re + d_max * k);
  return {theta_max, d_max};
}

double theta_max_from_area(double area_km2, double sphere_radius_km) {
  if (!(sphere_radius_km > 0.0)) throw DomainError("theta_max_from_area: radius must be positive");
  const double hemisphere = kTwoPi * sphere_radius_km * sphere_radius_km;
  if (!(area_km2 > 0.0 && area_km2 <= hemisphere)) {
    throw DomainError(fmt::format("cap area {} outside (0, {}]", area_km2, hemisphere));
  }
  // 1 - cos t = A / (2 pi R^2) = 2 sin^2(t/2)
  return 2.0 * std::asin(std::sqrt(area_km2 / (2.0 * hemisphere)));
}

double beam_from_theta_max(double theta_max, double sphere_radius_km, const EarthConstants& c) {
  require_above_earth(sphere_radius_km, c);
  const double los = los_theta_max(sphere_radius_km, c);
  if (!(theta_max > 0.0 && theta_max <= los * (1.0 + 1e-15))) {
    throw DomainError(fmt::format("theta_max {} outside (0, {}]", theta_max, los));
  }
  const double re = c.earth_radius_km;
  const double rs = sphere_radius_km;
  // Angle at the user between the zenith and the cap edge is psi/2.
  // Vertical offset R_s cos t - R_e = (R_s - R_e) - 2 R_s sin^2(t/2).
  const double s = std::sin(0.5 * theta_max);
  const double up = (rs - re) - 2.0 * rs * s * s;
  // The LoS cap maps to pi up to rounding; keep it inside the beam domain.
  return std::min(std::numbers::pi, 2.0 * std::atan2(rs * std::sin(theta_max), up));
}

ResolvedRegion resolve_region(const RegionSpec& region, double sphere_radius_km, const EarthConstants& c) {
  return std::visit(
      overloaded{
          [&](const LosRegion&) { return ResolvedRegion{los_theta_max(sphere_radius_km, c), std::nullopt}; },
          [&](const BeamRegion& b) { return theta_max_from_beam(b.psi, sphere_radius_km, c); },
          [&](const AreaRegion& a) {
            return ResolvedRegion{theta_max_from_area(a.area_km2, sphere_radius_km), std::nullopt};
          },
      },
      region);
}

std::string describe(const RegionSpec& region) {
  return std::visit(overloaded{
                        [](const LosRegion&) { return std::string("los"); },
                        [](const BeamRegion& b) { return fmt::format("beam:{:.10g}", b.psi); },
                        [](const AreaRegion& a) { return fmt::format("area:{:.10g}", a.area_km2); },
                    },
                    region);
}

}  // namespace ntnsim
