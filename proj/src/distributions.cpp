#include "ntnsim/distributions.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ntnsim/errors.hpp"

namespace ntnsim {

namespace {

// 1 - cos t, exact for small t.
double one_minus_cos(double t) {
  const double s = std::sin(0.5 * t);
  return 2.0 * s * s;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

DistanceLaw::DistanceLaw(DistanceLawKind kind, double a, double b, const EarthConstants& c)
    : kind_(kind), a_(a), b_(b), earth_(c) {}

DistanceLaw DistanceLaw::spherical(double sphere_radius_km, double theta_max, const EarthConstants& c) {
  if (!(sphere_radius_km > c.earth_radius_km)) throw DomainError("spherical law: R_s must exceed R_e");
  if (!(theta_max > 0.0 && theta_max <= std::numbers::pi)) throw DomainError("spherical law: bad theta_max");
  return {DistanceLawKind::Spherical, sphere_radius_km, theta_max, c};
}

DistanceLaw DistanceLaw::planar(double rho_max, double planar_height_km, const EarthConstants& c) {
  if (!(rho_max > 0.0)) throw DomainError("planar law: rho_max must be positive");
  return {DistanceLawKind::Planar, rho_max, planar_height_km, c};
}

double DistanceLaw::d_min() const {
  if (kind_ == DistanceLawKind::Spherical) return a_ - earth_.earth_radius_km;
  return std::abs(b_ - earth_.earth_radius_km);
}

double DistanceLaw::d_max() const {
  if (kind_ == DistanceLawKind::Spherical) return user_distance_spherical(b_, a_, earth_);
  return user_distance_planar(a_, b_, earth_);
}

double DistanceLaw::cdf(double d) const {
  return kind_ == DistanceLawKind::Spherical ? cdf_spherical(d, a_, b_, earth_) : cdf_planar(d, a_, b_, earth_);
}

double cdf_spherical(double d, double sphere_radius_km, double theta_max, const EarthConstants& c) {
  const double re = c.earth_radius_km;
  const double rs = sphere_radius_km;
  // 1 - (R_e^2 + R_s^2 - d^2)/(2 R_e R_s) == (d^2 - (R_s - R_e)^2)/(2 R_e R_s)
  const double lo = rs - re;
  return clamp01((d * d - lo * lo) / (2.0 * re * rs * one_minus_cos(theta_max)));
}

double cdf_planar(double d, double rho_max, double planar_height_km, const EarthConstants& c) {
  const double dz = planar_height_km - c.earth_radius_km;
  return clamp01((d * d - dz * dz) / (rho_max * rho_max));
}

double sample_distance(const DistanceLaw& law, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError(fmt::format("sample_distance: u={} outside [0, 1]", u));
  const double re = law.earth_.earth_radius_km;
  if (law.kind_ == DistanceLawKind::Spherical) {
    const double rs = law.a_;
    const double lo = rs - re;
    return std::sqrt(lo * lo + u * 2.0 * re * rs * one_minus_cos(law.b_));
  }
  const double dz = law.b_ - re;
  return std::sqrt(dz * dz + u * law.a_ * law.a_);
}

double mean_sq_distance_spherical(double sphere_radius_km, double theta_max, const EarthConstants& c) {
  const double re = c.earth_radius_km;
  const double rs = sphere_radius_km;
  // R_e^2 + R_s^2 - R_e R_s (1 + cos t) == (R_s - R_e)^2 + R_e R_s (1 - cos t)
  return (rs - re) * (rs - re) + re * rs * one_minus_cos(theta_max);
}

double mean_sq_distance_planar(double rho_max, double planar_height_km, const EarthConstants& c) {
  const double dz = planar_height_km - c.earth_radius_km;
  return dz * dz + 0.5 * rho_max * rho_max;
}

double optimal_altitude(double sphere_radius_km, double theta_max, double rho_max, const EarthConstants& c) {
  // Radicand equals E_s[D^2] - rho_max^2 / 2.
  const double radicand = mean_sq_distance_spherical(sphere_radius_km, theta_max, c) - 0.5 * rho_max * rho_max;
  if (radicand < 0.0) {
    throw DomainError(fmt::format("no equalizing planar altitude: radicand {} < 0", radicand));
  }
  return c.earth_radius_km + std::sqrt(radicand);
}

}  // namespace ntnsim
