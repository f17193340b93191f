#include "ntnsim/pointgen.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ntnsim/errors.hpp"

namespace ntnsim {

DeploymentParams DeploymentParams::make(double sphere_radius_km, double theta_max, double planar_height_km,
                                        std::size_t n_points) {
  if (!(sphere_radius_km > 0.0) || !std::isfinite(sphere_radius_km)) {
    throw DomainError(fmt::format("sphere radius must be positive, got {}", sphere_radius_km));
  }
  if (!(theta_max > 0.0 && theta_max <= 0.5 * std::numbers::pi)) {
    throw DomainError(fmt::format("theta_max must lie in (0, pi/2], got {}", theta_max));
  }
  const double lower = sphere_radius_km * std::cos(theta_max);
  if (!(planar_height_km > lower && planar_height_km < sphere_radius_km)) {
    throw DomainError(fmt::format("planar height {} outside ({}, {})", planar_height_km, lower, sphere_radius_km));
  }
  if (n_points == 0) throw DomainError("deployment needs at least one point");
  return {sphere_radius_km, theta_max, sphere_radius_km * std::sin(theta_max), planar_height_km, n_points};
}

std::vector<CartesianPoint> PairedDeployment::spherical_cartesian() const {
  std::vector<CartesianPoint> out;
  out.reserve(spherical.size());
  for (const auto& p : spherical) out.push_back(spherical_to_cartesian(p));
  return out;
}

std::vector<CartesianPoint> PairedDeployment::planar_cartesian() const {
  std::vector<CartesianPoint> out;
  out.reserve(planar.size());
  for (const auto& p : planar) out.push_back(planar_to_cartesian(p));
  return out;
}

double sample_polar(double u, double theta_max) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError(fmt::format("sample_polar: u={} outside [0, 1]", u));
  if (!(theta_max > 0.0 && theta_max <= 0.5 * std::numbers::pi)) {
    throw DomainError(fmt::format("sample_polar: theta_max={} outside (0, pi/2]", theta_max));
  }
  // arccos(1 - u(1 - cos t)) rewritten with 1 - cos t = 2 sin^2(t/2), which
  // stays accurate for narrow caps.
  return 2.0 * std::asin(std::sqrt(u) * std::sin(0.5 * theta_max));
}

double sample_horizontal_radius(double u, double rho_max) { return std::sqrt(u) * rho_max; }

UniformPair uniform_pair_at(const CounterRng& rng, std::size_t n) {
  return {rng.uniform_at(2 * n), rng.uniform_at(2 * n + 1)};
}

PairedDeployment generate_pair_from_uniforms(const DeploymentParams& params, std::vector<UniformPair> uniforms) {
  PairedDeployment out;
  out.params = params;
  out.spherical.reserve(uniforms.size());
  out.planar.reserve(uniforms.size());
  for (const auto& [u, v] : uniforms) {
    const double phi = kTwoPi * v;
    out.spherical.push_back({params.sphere_radius_km, phi, sample_polar(u, params.theta_max)});
    out.planar.push_back({sample_horizontal_radius(u, params.rho_max), phi, params.planar_height_km});
  }
  out.uniforms = std::move(uniforms);
  return out;
}

PairedDeployment generate_pair(const DeploymentParams& params, RngSpec rng) {
  const CounterRng gen(rng);
  std::vector<UniformPair> uniforms(params.n_points);
  for (std::size_t n = 0; n < params.n_points; ++n) uniforms[n] = uniform_pair_at(gen, n);
  return generate_pair_from_uniforms(params, std::move(uniforms));
}

double los_theta_max(double sphere_radius_km, const EarthConstants& c) {
  if (!(sphere_radius_km > c.earth_radius_km)) {
    throw DomainError(fmt::format("los_theta_max: radius {} not above the Earth surface", sphere_radius_km));
  }
  return std::acos(c.earth_radius_km / sphere_radius_km);
}

void write_points_csv(std::ostream& out, const PairedDeployment& pair) {
  out << "n,u,v,theta_s,phi,rho_p,x_s,y_s,z_s,x_p,y_p,z_p\n";
  for (std::size_t n = 0; n < pair.spherical.size(); ++n) {
    const auto& s = pair.spherical[n];
    const auto& p = pair.planar[n];
    const auto xs = spherical_to_cartesian(s);
    const auto xp = planar_to_cartesian(p);
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", n,
               pair.uniforms[n].u, pair.uniforms[n].v, s.polar, s.azimuth, p.horizontal_radius, xs.x, xs.y, xs.z, xp.x,
               xp.y, xp.z);
  }
}

CellGrid CellGrid::from_count(std::size_t cells) {
  if (cells < 2) throw DomainError(fmt::format("homogeneity grid needs at least 2 cells, got {}", cells));
  std::size_t bands = static_cast<std::size_t>(std::sqrt(static_cast<double>(cells)));
  while (cells % bands != 0) --bands;
  return {bands, cells / bands};
}

namespace {

std::size_t bin(double fraction, std::size_t count) {
  return std::min(count - 1, static_cast<std::size_t>(std::max(0.0, fraction) * static_cast<double>(count)));
}

// Radial coordinate is already mapped to [0, 1] by its area fraction, so
// equal-width bins in that fraction are equal-area cells.
GoodnessOfFit count_cells(std::span<const double> area_fraction, std::span<const double> azimuth, CellGrid grid) {
  if (grid.bands == 0 || grid.sectors == 0 || grid.cells() < 2) {
    throw DomainError("homogeneity test needs at least 2 cells");
  }
  const double expected = static_cast<double>(area_fraction.size()) / static_cast<double>(grid.cells());
  if (expected < 5.0) {
    throw DomainError(fmt::format("homogeneity test: {:.3g} expected points per cell, need >= 5", expected));
  }
  std::vector<std::size_t> observed(grid.cells(), 0);
  for (std::size_t i = 0; i < area_fraction.size(); ++i) {
    const std::size_t band = bin(area_fraction[i], grid.bands);
    const std::size_t sector = bin(azimuth[i] / kTwoPi, grid.sectors);
    ++observed[band * grid.sectors + sector];
  }
  const std::vector<double> expected_counts(grid.cells(), expected);
  return chi_square_test(observed, expected_counts);
}

}  // namespace

GoodnessOfFit homogeneity_test(std::span<const SphericalPoint> points, double theta_max, CellGrid grid) {
  std::vector<double> fraction(points.size());
  std::vector<double> azimuth(points.size());
  const double half = std::sin(0.5 * theta_max);
  for (std::size_t i = 0; i < points.size(); ++i) {
    // Band edges at cos(theta_k) = 1 - (k/K)(1 - cos theta_max).
    const double s = std::sin(0.5 * points[i].polar);
    fraction[i] = (s * s) / (half * half);
    azimuth[i] = points[i].azimuth;
  }
  return count_cells(fraction, azimuth, grid);
}

GoodnessOfFit homogeneity_test(std::span<const PlanarPoint> points, double rho_max, CellGrid grid) {
  std::vector<double> fraction(points.size());
  std::vector<double> azimuth(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    // Annulus edges at rho_k = rho_max sqrt(k/K).
    const double r = points[i].horizontal_radius / rho_max;
    fraction[i] = r * r;
    azimuth[i] = points[i].azimuth;
  }
  return count_cells(fraction, azimuth, grid);
}

double similarity_displacement(double cap_area_km2, double sphere_radius_km, std::span<const UniformPair> uniforms) {
  if (!(cap_area_km2 > 0.0)) throw DomainError("similarity_displacement: cap area must be positive");
  const double hemisphere = kTwoPi * sphere_radius_km * sphere_radius_km;
  if (cap_area_km2 > hemisphere) {
    throw DomainError(fmt::format("cap area {} exceeds the hemisphere of radius {}", cap_area_km2, sphere_radius_km));
  }
  const double theta_max = 2.0 * std::asin(std::sqrt(cap_area_km2 / (2.0 * hemisphere)));
  const double rho_max = sphere_radius_km * std::sin(theta_max);
  double worst = 0.0;
  for (const auto& [u, v] : uniforms) {
    const double phi = kTwoPi * v;
    const double polar = sample_polar(u, theta_max);
    const double rho = sample_horizontal_radius(u, rho_max);
    const double r_sph = sphere_radius_km * std::sin(polar);
    // Both central points moved to the origin: the spherical point sits
    // R_s (1 - cos theta) = 2 R_s sin^2(theta/2) below the tangent plane.
    const double s = std::sin(0.5 * polar);
    const double dz = 2.0 * sphere_radius_km * s * s;
    const double dx = (r_sph - rho) * std::cos(phi);
    const double dy = (r_sph - rho) * std::sin(phi);
    worst = std::max(worst, std::sqrt(dx * dx + dy * dy + dz * dz));
  }
  return worst;
}

double similarity_displacement(double cap_area_km2, double sphere_radius_km, std::size_t n_points, RngSpec rng) {
  const CounterRng gen(rng);
  std::vector<UniformPair> uniforms(n_points);
  for (std::size_t n = 0; n < n_points; ++n) uniforms[n] = uniform_pair_at(gen, n);
  return similarity_displacement(cap_area_km2, sphere_radius_km, uniforms);
}

}  // namespace ntnsim
