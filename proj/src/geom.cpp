#include "ntnsim/geom.hpp"

#include <fmt/format.h>

#include "ntnsim/errors.hpp"

namespace ntnsim {

void EarthConstants::validate() const {
  if (!(earth_radius_km > 0.0) || !std::isfinite(earth_radius_km)) {
    throw DomainError(fmt::format("earth radius must be positive, got {}", earth_radius_km));
  }
}

double cap_area(double sphere_radius_km, double theta_max) {
  if (!(sphere_radius_km > 0.0)) {
    throw DomainError(fmt::format("cap_area: radius must be positive, got {}", sphere_radius_km));
  }
  if (!(theta_max > 0.0 && theta_max <= std::numbers::pi)) {
    throw DomainError(fmt::format("cap_area: theta_max must lie in (0, pi], got {}", theta_max));
  }
  // 1 - cos(t) = 2 sin^2(t/2); the half-angle form keeps small caps exact.
  const double s = std::sin(0.5 * theta_max);
  return 4.0 * std::numbers::pi * sphere_radius_km * sphere_radius_km * s * s;
}

CartesianPoint spherical_to_cartesian(const SphericalPoint& p) {
  const double st = std::sin(p.polar);
  return {p.radius * st * std::cos(p.azimuth), p.radius * st * std::sin(p.azimuth), p.radius * std::cos(p.polar)};
}

CartesianPoint planar_to_cartesian(const PlanarPoint& p) {
  return {p.horizontal_radius * std::cos(p.azimuth), p.horizontal_radius * std::sin(p.azimuth), p.axis_height};
}

double user_distance_spherical(double polar, double sphere_radius_km, const EarthConstants& c) {
  const double re = c.earth_radius_km;
  const double rs = sphere_radius_km;
  // R_e^2 + R_s^2 - 2 R_e R_s cos(t) == (R_s - R_e)^2 + 4 R_e R_s sin^2(t/2)
  const double s = std::sin(0.5 * polar);
  return std::sqrt((rs - re) * (rs - re) + 4.0 * re * rs * s * s);
}

double user_distance_planar(double horizontal_radius, double axis_height, const EarthConstants& c) {
  return std::hypot(horizontal_radius, axis_height - c.earth_radius_km);
}

double elevation_angle(const CartesianPoint& p, const EarthConstants& c) {
  const CartesianPoint rel = p - user_position(c);
  return std::atan2(rel.z, std::hypot(rel.x, rel.y));
}

}  // namespace ntnsim
