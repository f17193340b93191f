#pragma once

// Paired spherical / planar binomial point processes.
//
// Point n of the spherical process X and point n of the planar process Y
// are driven by the same uniform pair (u, v):
//
//   theta_s = arccos(1 - u (1 - cos theta_max))   area-uniform on the cap
//   rho_p   = sqrt(u) * rho_max                   area-uniform on the disk
//   phi     = 2 pi v                              shared azimuth
//
// With rho_max = R_s sin(theta_max) and R_s cos(theta_max) < h_p < R_s the
// two processes coincide point by point as R_s grows with the cap area held
// fixed.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "ntnsim/geom.hpp"
#include "ntnsim/rng.hpp"
#include "ntnsim/stats.hpp"

namespace ntnsim {

struct DeploymentParams {
  double sphere_radius_km = 0.0;  // R_s
  double theta_max = 0.0;
  double rho_max = 0.0;           // always R_s sin(theta_max)
  double planar_height_km = 0.0;  // h_p, from Earth center
  std::size_t n_points = 0;

  /// Validates and couples rho_max to the cap. Throws DomainError unless
  /// 0 < theta_max <= pi/2, R_s cos(theta_max) < h_p < R_s and n >= 1.
  static DeploymentParams make(double sphere_radius_km, double theta_max, double planar_height_km,
                               std::size_t n_points);
};

struct UniformPair {
  double u = 0.0;
  double v = 0.0;
};

struct PairedDeployment {
  DeploymentParams params;
  std::vector<UniformPair> uniforms;
  std::vector<SphericalPoint> spherical;  // X
  std::vector<PlanarPoint> planar;        // Y

  std::vector<CartesianPoint> spherical_cartesian() const;
  std::vector<CartesianPoint> planar_cartesian() const;
};

/// Inverse-transform polar angle; u in [0, 1], theta_max in (0, pi/2].
double sample_polar(double u, double theta_max);

double sample_horizontal_radius(double u, double rho_max);

/// Uniform pair n of a stream. Counter 2n feeds u and 2n+1 feeds v, so any
/// partition of the index range reproduces the same draws.
UniformPair uniform_pair_at(const CounterRng& rng, std::size_t n);

PairedDeployment generate_pair(const DeploymentParams& params, RngSpec rng);

/// Same mapping as generate_pair with caller-supplied uniforms (one per point).
PairedDeployment generate_pair_from_uniforms(const DeploymentParams& params, std::vector<UniformPair> uniforms);

/// Polar half-angle of the cap visible above the user's horizon.
double los_theta_max(double sphere_radius_km, const EarthConstants& c);

/// CSV dump: n,u,v,theta_s,phi,rho_p,x_s,y_s,z_s,x_p,y_p,z_p (17 significant digits).
void write_points_csv(std::ostream& out, const PairedDeployment& pair);

// Homogeneity checks over equal-area cells: `bands` polar bands (or annuli)
// times `sectors` azimuth sectors.
struct CellGrid {
  std::size_t bands = 10;
  std::size_t sectors = 10;

  std::size_t cells() const { return bands * sectors; }
  /// Most square factorization of `cells`; throws for cells < 2.
  static CellGrid from_count(std::size_t cells);
};

GoodnessOfFit homogeneity_test(std::span<const SphericalPoint> points, double theta_max, CellGrid grid);
GoodnessOfFit homogeneity_test(std::span<const PlanarPoint> points, double rho_max, CellGrid grid);

/// Maximum paired Cartesian displacement between X and Y after translating
/// both surfaces so their central points coincide. The cap is sized so that
/// its area equals `cap_area_km2` on the sphere of radius R_s.
double similarity_displacement(double cap_area_km2, double sphere_radius_km, std::span<const UniformPair> uniforms);
double similarity_displacement(double cap_area_km2, double sphere_radius_km, std::size_t n_points, RngSpec rng);

}  // namespace ntnsim
