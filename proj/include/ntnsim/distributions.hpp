#pragma once

// User-to-NTP distance laws for the paired processes and the altitude that
// equalizes their mean squared distances.
//
// Spherical: D^2 = R_e^2 + R_s^2 - 2 R_e R_s cos(theta) with cos(theta)
// uniform on [cos theta_max, 1], so D^2 is uniform on its range:
//   F_s(d) = (1 - (R_e^2 + R_s^2 - d^2) / (2 R_e R_s)) / (1 - cos theta_max)
// Planar: D^2 = (h_p - R_e)^2 + rho^2 with rho^2 uniform on [0, rho_max^2]:
//   F_p(d) = (d^2 - (h_p - R_e)^2) / rho_max^2
//
// Both CDFs clamp to 0 / 1 outside their support.

#include "ntnsim/geom.hpp"

namespace ntnsim {

enum class DistanceLawKind { Spherical, Planar };

class DistanceLaw {
 public:
  static DistanceLaw spherical(double sphere_radius_km, double theta_max, const EarthConstants& c);
  static DistanceLaw planar(double rho_max, double planar_height_km, const EarthConstants& c);

  DistanceLawKind kind() const { return kind_; }
  double d_min() const;
  double d_max() const;
  double cdf(double d) const;

 private:
  DistanceLaw(DistanceLawKind kind, double a, double b, const EarthConstants& c);

  DistanceLawKind kind_;
  // Spherical: (R_s, theta_max). Planar: (rho_max, h_p).
  double a_;
  double b_;
  EarthConstants earth_;

  friend double sample_distance(const DistanceLaw& law, double u);
};

double cdf_spherical(double d, double sphere_radius_km, double theta_max, const EarthConstants& c);
double cdf_planar(double d, double rho_max, double planar_height_km, const EarthConstants& c);

/// Inverse CDF, u in [0, 1].
double sample_distance(const DistanceLaw& law, double u);

/// E[D^2] on the cap: R_e^2 + R_s^2 - R_e R_s (1 + cos theta_max).
double mean_sq_distance_spherical(double sphere_radius_km, double theta_max, const EarthConstants& c);

/// E[D^2] on the disk: (h_p - R_e)^2 + rho_max^2 / 2.
double mean_sq_distance_planar(double rho_max, double planar_height_km, const EarthConstants& c);

/// Planar altitude (from Earth center) at which the two mean squared
/// distances agree:
///   h_opt = R_e + sqrt(R_e^2 - rho_max^2/2 - (1 + cos theta_max) R_s R_e + R_s^2)
/// Throws DomainError when the radicand is negative.
double optimal_altitude(double sphere_radius_km, double theta_max, double rho_max, const EarthConstants& c);

}  // namespace ntnsim
