#include "ntnsim/errest.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ntnsim/distributions.hpp"
#include "ntnsim/errors.hpp"
#include "ntnsim/parallel.hpp"
#include "ntnsim/pointgen.hpp"
#include "ntnsim/stats.hpp"

namespace ntnsim {

namespace {

constexpr std::uint64_t kJsamSlot = 0;
constexpr double kUnreliableFraction = 0.01;

ErrorEstimate finish(const EstimationConfig& cfg, std::vector<AltitudeError> rows) {
  ErrorEstimate out;
  out.metric = cfg.metric;
  out.provenance = {cfg.seed, cfg.n_in, cfg.mode == EstimationMode::CSM ? cfg.n_out : 1, cfg.mode};
  out.e_min = std::numeric_limits<double>::quiet_NaN();
  out.h_opt_km = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    out.excluded += r.excluded;
    out.evaluated += r.used + r.excluded;
    if (std::isnan(r.mean_rel_err)) continue;
    if (std::isnan(out.e_min) || r.mean_rel_err < out.e_min) {
      out.e_min = r.mean_rel_err;
      out.h_opt_km = r.planar_height_km;
      out.e_min_std_error = r.std_error;
    }
  }
  out.unreliable = std::isnan(out.e_min) ||
                   static_cast<double>(out.excluded) > kUnreliableFraction * static_cast<double>(out.evaluated);
  out.per_altitude = std::move(rows);
  return out;
}

}  // namespace

std::string_view mode_name(EstimationMode m) {
  switch (m) {
    case EstimationMode::CSM: return "csm";
    case EstimationMode::JSAM: return "jsam";
    case EstimationMode::CAM: return "cam";
  }
  return "?";
}

EstimationMode parse_mode(std::string_view name) {
  if (name == "csm") return EstimationMode::CSM;
  if (name == "jsam") return EstimationMode::JSAM;
  if (name == "cam") return EstimationMode::CAM;
  throw ConfigError(fmt::format("unknown estimation mode '{}' (expected csm, jsam or cam)", name));
}

double EstimationConfig::rho_max() const { return sphere_radius_km * std::sin(theta_max); }

MetricContext EstimationConfig::metric_context() const { return {earth, channel, mc_draws, normalization}; }

void EstimationConfig::validate() const {
  earth.validate();
  if (!(sphere_radius_km > earth.earth_radius_km)) {
    throw DomainError(fmt::format("sphere radius {} must exceed the Earth radius", sphere_radius_km));
  }
  if (!(theta_max > 0.0 && theta_max <= 0.5 * std::numbers::pi)) {
    throw DomainError(fmt::format("theta_max {} outside (0, pi/2]", theta_max));
  }
  if (n_in == 0) throw ConfigError("n_in must be >= 1");
  if (mode == EstimationMode::CSM && n_out == 0) throw ConfigError("n_out must be >= 1");
  if (n_points == 0) throw ConfigError("n_points must be >= 1");
  if (is_system_level(metric)) {
    if (!channel) throw ConfigError(fmt::format("metric {} needs a channel model", metric_name(metric)));
    channel->validate();
    if (mc_draws == 0) throw ConfigError("mc_draws must be >= 1");
  }
}

std::vector<double> csm_altitudes(double sphere_radius_km, double theta_max, std::size_t n_out) {
  const double s = std::sin(0.5 * theta_max);
  const double span = 2.0 * sphere_radius_km * s * s;  // R_s (1 - cos theta_max)
  const double base = sphere_radius_km - span;
  const double step = span / static_cast<double>(n_out + 1);
  std::vector<double> out(n_out);
  for (std::size_t k = 0; k < n_out; ++k) out[k] = base + static_cast<double>(k + 1) * step;
  return out;
}

AltitudeError relative_error_at(double planar_height_km, const EstimationConfig& cfg, std::uint64_t slot) {
  const auto params = DeploymentParams::make(cfg.sphere_radius_km, cfg.theta_max, planar_height_km, cfg.n_points);
  const MetricContext ctx = cfg.metric_context();
  const RngSpec slot_rng = RngSpec{cfg.seed, 0}.child(slot);

  std::vector<double> errors(cfg.n_in);
  std::vector<char> excluded(cfg.n_in, 0);
  parallel_for(cfg.n_in, cfg.workers, [&](std::size_t i) {
    const RngSpec it = slot_rng.child(i);
    const PairedDeployment pair = generate_pair(params, it.child(0));
    if (cfg.metric == MetricId::T1_PairedTransport) {
      errors[i] = t1_paired_transport(pair, cfg.earth, cfg.normalization);
      return;
    }
    const auto xs = pair.spherical_cartesian();
    const auto ys = pair.planar_cartesian();
    const double gs = evaluate_metric(cfg.metric, xs, ctx, it.child(1));
    const double gp = evaluate_metric(cfg.metric, ys, ctx, it.child(2));
    if (gs == 0.0) {
      excluded[i] = 1;
      return;
    }
    errors[i] = std::abs(gs - gp) / gs;
  });

  std::vector<double> kept;
  kept.reserve(cfg.n_in);
  for (std::size_t i = 0; i < cfg.n_in; ++i) {
    if (!excluded[i]) kept.push_back(errors[i]);
  }
  const SampleSummary s = summarize(kept);
  AltitudeError row;
  row.planar_height_km = planar_height_km;
  row.used = kept.size();
  row.excluded = cfg.n_in - kept.size();
  row.mean_rel_err = kept.empty() ? std::numeric_limits<double>::quiet_NaN() : s.mean;
  row.std_error = s.std_error;
  return row;
}

ErrorEstimate estimate_csm(const EstimationConfig& cfg) {
  cfg.validate();
  const auto grid = csm_altitudes(cfg.sphere_radius_km, cfg.theta_max, cfg.n_out);
  std::vector<AltitudeError> rows;
  rows.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) rows.push_back(relative_error_at(grid[k], cfg, k + 1));
  return finish(cfg, std::move(rows));
}

ErrorEstimate estimate_jsam(const EstimationConfig& cfg) {
  cfg.validate();
  const double h = optimal_altitude(cfg.sphere_radius_km, cfg.theta_max, cfg.rho_max(), cfg.earth);
  std::vector<AltitudeError> rows{relative_error_at(h, cfg, kJsamSlot)};
  return finish(cfg, std::move(rows));
}

ErrorEstimate estimate_cam(const EstimationConfig& cfg) {
  cfg.validate();
  if (cfg.metric != MetricId::T2_AvgEnergy) {
    throw ConfigError(fmt::format("closed-form estimation is only available for t2, not {}", metric_name(cfg.metric)));
  }
  const double rho = cfg.rho_max();
  const double h = optimal_altitude(cfg.sphere_radius_km, cfg.theta_max, rho, cfg.earth);
  const double gs = mean_sq_distance_spherical(cfg.sphere_radius_km, cfg.theta_max, cfg.earth);
  const double gp = mean_sq_distance_planar(rho, h, cfg.earth);
  AltitudeError row;
  row.planar_height_km = h;
  row.mean_rel_err = std::abs(gs - gp) / gs;
  std::vector<AltitudeError> rows{row};
  return finish(cfg, std::move(rows));
}

ErrorEstimate estimate(const EstimationConfig& cfg) {
  switch (cfg.mode) {
    case EstimationMode::CSM: return estimate_csm(cfg);
    case EstimationMode::JSAM: return estimate_jsam(cfg);
    case EstimationMode::CAM: return estimate_cam(cfg);
  }
  throw ConfigError("unknown estimation mode");
}

}  // namespace ntnsim
