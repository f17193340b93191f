#pragma once

// Relative error of the planar approximation.
//
// For one planar altitude h_p the estimator draws N_in fresh paired
// deployments and averages |g_s - g_p| / g_s, where g is the metric on the
// spherical (s) and planar (p) process. t1 already compares the two
// processes, so its per-iteration value is t1 itself.
//
//   CSM   sweeps N_out altitudes h_k = R_s cos(theta_max) + k dh,
//         dh = R_s (1 - cos theta_max) / (N_out + 1), and keeps the minimum.
//   JSAM  evaluates only at the closed-form altitude of optimal_altitude().
//   CAM   closed forms only; available for t2.
//
// Streams: iteration i at altitude slot k uses
//   RngSpec{seed, 0}.child(k).child(i)
// with children 0 (uniforms), 1 (spherical fading) and 2 (planar fading).
// Results are reduced in index order, so any worker count gives identical
// bits.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ntnsim/channel.hpp"
#include "ntnsim/geom.hpp"
#include "ntnsim/metrics.hpp"

namespace ntnsim {

enum class EstimationMode { CSM, JSAM, CAM };

std::string_view mode_name(EstimationMode m);
EstimationMode parse_mode(std::string_view name);

struct EstimationConfig {
  double sphere_radius_km = 0.0;
  double theta_max = 0.0;
  MetricId metric = MetricId::T2_AvgEnergy;
  std::size_t n_in = 1000;
  std::size_t n_out = 50;
  std::size_t n_points = 20;
  std::size_t mc_draws = 32;
  EstimationMode mode = EstimationMode::CSM;
  std::optional<ChannelModel> channel;
  std::uint64_t seed = 1;
  EarthConstants earth;
  TransportNormalization normalization = TransportNormalization::ToUser;
  std::size_t workers = 1;  // 0 = hardware concurrency; never changes results

  double rho_max() const;
  MetricContext metric_context() const;
  /// Throws ConfigError for inconsistent settings, DomainError for an
  /// invalid cap.
  void validate() const;
};

struct AltitudeError {
  double planar_height_km = 0.0;
  double mean_rel_err = 0.0;  // NaN when every iteration was excluded
  double std_error = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;  // iterations with g_s == 0
};

struct Provenance {
  std::uint64_t seed = 0;
  std::size_t n_in = 0;
  std::size_t n_out = 0;
  EstimationMode mode = EstimationMode::CSM;
};

struct ErrorEstimate {
  MetricId metric = MetricId::T2_AvgEnergy;
  double e_min = 0.0;
  double h_opt_km = 0.0;  // from Earth center
  double e_min_std_error = 0.0;
  std::vector<AltitudeError> per_altitude;
  std::size_t excluded = 0;
  std::size_t evaluated = 0;
  bool unreliable = false;  // more than 1% of iterations excluded
  Provenance provenance;
};

/// Altitudes swept by CSM, ascending, all inside (R_s cos theta_max, R_s).
std::vector<double> csm_altitudes(double sphere_radius_km, double theta_max, std::size_t n_out);

/// Mean relative error at planar altitude h_p over cfg.n_in iterations.
/// `slot` selects the random stream family (CSM uses the grid index k).
AltitudeError relative_error_at(double planar_height_km, const EstimationConfig& cfg, std::uint64_t slot);

ErrorEstimate estimate_csm(const EstimationConfig& cfg);
ErrorEstimate estimate_jsam(const EstimationConfig& cfg);
/// Closed-form relative error |E_s[D^2] - E_p[D^2]| / E_s[D^2] at the
/// equalizing altitude. t2 only; other metrics throw ConfigError.
ErrorEstimate estimate_cam(const EstimationConfig& cfg);

/// Dispatches on cfg.mode.
ErrorEstimate estimate(const EstimationConfig& cfg);

}  // namespace ntnsim
