#pragma once

// Shared coordinate frame: Earth center at the origin, typical user at
// Cartesian (0, 0, R_earth). The user's zenith is the +z axis. All lengths
// are km, all angles radians.

#include <cmath>
#include <numbers>

namespace ntnsim {

struct EarthConstants {
  double earth_radius_km = 6371.0;

  void validate() const;
};

struct SphericalPoint {
  double radius = 0.0;   // distance from Earth center
  double azimuth = 0.0;  // [0, 2*pi)
  double polar = 0.0;    // angle from the user's zenith axis
};

// Cylindrical coordinates about the zenith axis. axis_height is measured
// from the Earth center, not from the ground.
struct PlanarPoint {
  double horizontal_radius = 0.0;
  double azimuth = 0.0;
  double axis_height = 0.0;
};

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr CartesianPoint operator-(const CartesianPoint& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr double squared_norm() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(squared_norm()); }
};

inline double squared_distance(const CartesianPoint& a, const CartesianPoint& b) {
  return (a - b).squared_norm();
}

/// Area of the spherical cap of polar half-angle theta_max on a sphere of
/// radius R: 2*pi*R^2*(1 - cos(theta_max)).
double cap_area(double sphere_radius_km, double theta_max);

CartesianPoint spherical_to_cartesian(const SphericalPoint& p);
CartesianPoint planar_to_cartesian(const PlanarPoint& p);

inline CartesianPoint user_position(const EarthConstants& c) { return {0.0, 0.0, c.earth_radius_km}; }

/// Distance from the typical user to a point at polar angle theta on the
/// sphere of radius R_s (law of cosines).
double user_distance_spherical(double polar, double sphere_radius_km, const EarthConstants& c);

/// Distance from the typical user to a planar point; the plane sits
/// (h_p - R_earth) above the user.
double user_distance_planar(double horizontal_radius, double axis_height, const EarthConstants& c);

/// Elevation of a point above the user's local horizontal plane, in
/// radians. Negative below the horizon.
double elevation_angle(const CartesianPoint& p, const EarthConstants& c);

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace ntnsim
