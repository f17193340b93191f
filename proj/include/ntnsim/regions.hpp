#pragma once

#include <optional>
#include <string>
#include <variant>

#include "ntnsim/geom.hpp"

namespace ntnsim {

/// Whole cap above the user's horizon.
struct LosRegion {};

/// Zenith-pointing receive beam with main-lobe central angle psi (radians).
struct BeamRegion {
  double psi = 0.0;
};

/// Cap of fixed area at the user's zenith (km^2).
struct AreaRegion {
  double area_km2 = 0.0;
};

using RegionSpec = std::variant<LosRegion, BeamRegion, AreaRegion>;

struct ResolvedRegion {
  double theta_max = 0.0;
  std::optional<double> d_max;  // beam regions only: farthest in-lobe NTP distance
};

/// Cap reached by a zenith beam of central angle psi on the sphere of
/// radius R_s. The farthest in-lobe distance is the positive root of
///   d^2 - 2 R_e cos(pi - psi/2) d + R_e^2 - R_s^2 = 0
/// and theta_max is the central angle subtended by that point. Beams that
/// see past the horizon (psi > pi) are rejected with DomainError.
ResolvedRegion theta_max_from_beam(double psi, double sphere_radius_km, const EarthConstants& c);

/// theta_max = arccos(1 - A / (2 pi R_s^2)); A in (0, 2 pi R_s^2].
double theta_max_from_area(double area_km2, double sphere_radius_km);

/// Inverse of theta_max_from_beam for theta_max in (0, arccos(R_e/R_s)].
double beam_from_theta_max(double theta_max, double sphere_radius_km, const EarthConstants& c);

ResolvedRegion resolve_region(const RegionSpec& region, double sphere_radius_km, const EarthConstants& c);

std::string describe(const RegionSpec& region);

}  // namespace ntnsim
