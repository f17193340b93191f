#include "ntnsim/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "json.hpp"
#include "ntnsim/distributions.hpp"
#include "ntnsim/errors.hpp"
#include "ntnsim/pointgen.hpp"
#include "ntnsim/regions.hpp"

namespace ntnsim {

namespace {

struct Cell {
  EstimationConfig est;
  double altitude_km = 0.0;
  std::string platform;
  std::string region;
  double region_value = 0.0;
};

std::string num(double v) { return fmt::format("{}", v); }
std::string num(std::size_t v) { return fmt::format("{}", v); }
std::string flag(bool b) { return b ? "1" : "0"; }

double percent(double v) { return 100.0 * v; }

std::vector<MetricId> checked_metrics(const RunConfig& cfg, EstimationMode mode) {
  if (mode == EstimationMode::CAM) {
    for (MetricId m : cfg.metrics) {
      if (m != MetricId::T2_AvgEnergy) {
        throw ConfigError(fmt::format("mode cam supports only t2, not {}", metric_name(m)));
      }
    }
  }
  return cfg.metrics;
}

// All cells are built and validated before any Monte Carlo work starts.
std::vector<ErrorEstimate> run_cells(const std::vector<Cell>& cells, CsvTable& sweep, double earth_radius_km) {
  for (const auto& c : cells) c.est.validate();
  std::vector<ErrorEstimate> out;
  out.reserve(cells.size());
  for (const auto& c : cells) {
    out.push_back(estimate(c.est));
    const auto& e = out.back();
    for (const auto& row : e.per_altitude) {
      sweep.rows.push_back({num(static_cast<std::size_t>(c.est.seed)), std::string(mode_name(c.est.mode)),
                            std::string(metric_name(c.est.metric)), num(c.altitude_km), num(c.est.theta_max),
                            num(row.planar_height_km - earth_radius_km), num(row.mean_rel_err),
                            num(c.est.n_in), num(e.provenance.n_out), num(row.excluded)});
    }
  }
  return out;
}

ExperimentOutput start(ExperimentKind kind, std::vector<std::string> header) {
  ExperimentOutput out;
  out.kind = kind;
  out.results.header = std::move(header);
  out.sweep.header = kSweepHeader;
  return out;
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::OptAltSweep: return "opt-alt";
    case ExperimentKind::ErrVsAltitude: return "err-alt";
    case ExperimentKind::HeatmapBeam: return "heatmap-beam";
    case ExperimentKind::HeatmapArea: return "heatmap-area";
    case ExperimentKind::CaseStudy: return "case-study";
  }
  return "?";
}

ExperimentKind parse_experiment(std::string_view name) {
  for (ExperimentKind k : kAllExperiments) {
    if (experiment_name(k) == name) return k;
  }
  throw ConfigError(fmt::format("unknown experiment '{}'", name));
}

std::string CsvTable::to_string() const {
  std::string out = fmt::format("{}\n", fmt::join(header, ","));
  for (const auto& r : rows) out += fmt::format("{}\n", fmt::join(r, ","));
  return out;
}

EstimationConfig estimation_for(const RunConfig& cfg, double altitude_km, double theta_max, MetricId metric) {
  EstimationConfig est;
  est.sphere_radius_km = cfg.earth.earth_radius_km + altitude_km;
  est.theta_max = theta_max;
  est.metric = metric;
  est.n_in = cfg.n_in;
  est.n_out = cfg.n_out;
  est.n_points = cfg.n_points;
  est.mc_draws = cfg.mc_draws;
  est.mode = cfg.mode;
  if (is_system_level(metric)) est.channel = cfg.channel.for_altitude(altitude_km);
  est.seed = cfg.seed;
  est.earth = cfg.earth;
  est.normalization = cfg.normalization;
  est.workers = cfg.workers;
  return est;
}

ExperimentOutput run_opt_alt_sweep(const RunConfig& cfg) {
  cfg.validate();
  auto out = start(ExperimentKind::OptAltSweep,
                   {"seed", "mode", "metric", "h_s_km", "theta_max_rad", "h_opt_km", "prop1_km", "ratio", "e_min",
                    "n_in", "n_out", "excluded", "unreliable"});
  const double re = cfg.earth.earth_radius_km;
  std::vector<Cell> cells;
  for (double hs : cfg.altitudes_km) {
    const double theta = los_theta_max(re + hs, cfg.earth);
    for (MetricId m : cfg.metrics) {
      Cell c{estimation_for(cfg, hs, theta, m), hs, "", "los", 0.0};
      c.est.mode = EstimationMode::CSM;  // the sweep is the point of this experiment
      cells.push_back(std::move(c));
    }
  }
  const auto results = run_cells(cells, out.sweep, re);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    const auto& e = results[i];
    const double prop1 = optimal_altitude(c.est.sphere_radius_km, c.est.theta_max, c.est.rho_max(), cfg.earth) - re;
    const double h_opt = e.h_opt_km - re;
    out.results.rows.push_back({num(static_cast<std::size_t>(cfg.seed)), "csm", std::string(metric_name(c.est.metric)),
                                num(c.altitude_km), num(c.est.theta_max), num(h_opt), num(prop1), num(h_opt / prop1),
                                num(e.e_min), num(c.est.n_in), num(c.est.n_out), num(e.excluded),
                                flag(e.unreliable)});
  }
  return out;
}

ExperimentOutput run_err_vs_altitude(const RunConfig& cfg) {
  cfg.validate();
  auto out = start(ExperimentKind::ErrVsAltitude,
                   {"seed", "mode", "metric", "h_s_km", "theta_max_rad", "h_p_km", "e_min", "e_min_pct",
                    "std_error", "n_in", "n_out", "excluded", "unreliable"});
  const double re = cfg.earth.earth_radius_km;
  const auto metrics = checked_metrics(cfg, cfg.mode);
  std::vector<Cell> cells;
  for (MetricId m : metrics) {
    for (double hs : cfg.altitudes_km) {
      cells.push_back({estimation_for(cfg, hs, los_theta_max(re + hs, cfg.earth), m), hs, "", "los", 0.0});
    }
  }
  const auto results = run_cells(cells, out.sweep, re);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    const auto& e = results[i];
    out.results.rows.push_back({num(static_cast<std::size_t>(cfg.seed)), std::string(mode_name(cfg.mode)),
                                std::string(metric_name(c.est.metric)), num(c.altitude_km), num(c.est.theta_max),
                                num(e.h_opt_km - re), num(e.e_min), num(percent(e.e_min)), num(e.e_min_std_error),
                                num(c.est.n_in), num(e.provenance.n_out), num(e.excluded), flag(e.unreliable)});
  }
  return out;
}

ExperimentOutput run_heatmap(const RunConfig& cfg, ExperimentKind kind) {
  if (kind != ExperimentKind::HeatmapBeam && kind != ExperimentKind::HeatmapArea) {
    throw ConfigError(fmt::format("{} is not a heatmap experiment", experiment_name(kind)));
  }
  cfg.validate();
  const bool beam = kind == ExperimentKind::HeatmapBeam;
  auto out = start(kind, {"seed", "mode", "metric", "h_s_km", "region", "region_value", "theta_max_rad", "h_p_km",
                          "e_min", "e_min_pct", "std_error", "n_in", "n_out", "excluded", "unreliable"});
  const double re = cfg.earth.earth_radius_km;
  const auto metrics = checked_metrics(cfg, cfg.mode);
  const auto& grid = beam ? cfg.beam_angles_rad : cfg.areas_km2;
  std::vector<Cell> cells;
  for (MetricId m : metrics) {
    for (double hs : cfg.altitudes_km) {
      for (double value : grid) {
        const RegionSpec region = beam ? RegionSpec{BeamRegion{value}} : RegionSpec{AreaRegion{value}};
        const double theta = resolve_region(region, re + hs, cfg.earth).theta_max;
        cells.push_back({estimation_for(cfg, hs, theta, m), hs, "", beam ? "beam" : "area", value});
      }
    }
  }
  const auto results = run_cells(cells, out.sweep, re);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    const auto& e = results[i];
    out.results.rows.push_back({num(static_cast<std::size_t>(cfg.seed)), std::string(mode_name(cfg.mode)),
                                std::string(metric_name(c.est.metric)), num(c.altitude_km), c.region,
                                num(c.region_value), num(c.est.theta_max), num(e.h_opt_km - re), num(e.e_min),
                                num(percent(e.e_min)), num(e.e_min_std_error), num(c.est.n_in),
                                num(e.provenance.n_out), num(e.excluded), flag(e.unreliable)});
  }
  return out;
}

ExperimentOutput run_case_study(const RunConfig& cfg) {
  cfg.validate();
  auto out = start(ExperimentKind::CaseStudy,
                   {"seed", "mode", "platform", "h_s_km", "psi_rad", "metric", "theta_max_rad", "h_p_km", "e_min",
                    "e_min_pct", "std_error", "n_in", "n_out", "excluded", "unreliable", "planar_recommended"});
  const double re = cfg.earth.earth_radius_km;
  const auto metrics = checked_metrics(cfg, cfg.mode);
  std::vector<Cell> cells;
  for (const auto& [platform, hs] : {std::pair{"hap", cfg.hap_altitude_km}, std::pair{"leo", cfg.leo_altitude_km}}) {
    for (double psi : cfg.case_study_beam_angles_rad) {
      const double theta = theta_max_from_beam(psi, re + hs, cfg.earth).theta_max;
      for (MetricId m : metrics) cells.push_back({estimation_for(cfg, hs, theta, m), hs, platform, "beam", psi});
    }
  }
  const auto results = run_cells(cells, out.sweep, re);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    const auto& e = results[i];
    const bool recommended = !std::isnan(e.e_min) && e.e_min < cfg.planar_threshold;
    out.results.rows.push_back({num(static_cast<std::size_t>(cfg.seed)), std::string(mode_name(cfg.mode)), c.platform,
                                num(c.altitude_km), num(c.region_value), std::string(metric_name(c.est.metric)),
                                num(c.est.theta_max), num(e.h_opt_km - re), num(e.e_min), num(percent(e.e_min)),
                                num(e.e_min_std_error), num(c.est.n_in), num(e.provenance.n_out), num(e.excluded),
                                flag(e.unreliable), flag(recommended)});
  }
  return out;
}

ExperimentOutput run_experiment(ExperimentKind kind, const RunConfig& cfg) {
  switch (kind) {
    case ExperimentKind::OptAltSweep: return run_opt_alt_sweep(cfg);
    case ExperimentKind::ErrVsAltitude: return run_err_vs_altitude(cfg);
    case ExperimentKind::HeatmapBeam:
    case ExperimentKind::HeatmapArea: return run_heatmap(cfg, kind);
    case ExperimentKind::CaseStudy: return run_case_study(cfg);
  }
  throw ConfigError("unknown experiment");
}

std::string RunManifest::to_json() const {
  const nlohmann::ordered_json j{
      {"experiment", experiment},
      {"config_hash", fmt::format("{:016x}", config_hash)},
      {"seed", seed},
      {"version", version},
      {"started_utc", started_utc},
      {"finished_utc", finished_utc},
      {"rows", {{"results", result_rows}, {"sweep", sweep_rows}}},
  };
  return j.dump(2) + "\n";
}

std::string utc_timestamp() {
  const auto now = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(now)));
}

void write_experiment(const std::filesystem::path& dir, const ExperimentOutput& out, const RunManifest& manifest) {
  std::filesystem::create_directories(dir);
  const std::string name(experiment_name(out.kind));
  auto write = [&](const std::string& file, const std::string& text) {
    std::ofstream f(dir / file, std::ios::binary);
    if (!f) throw ConfigError(fmt::format("cannot write '{}'", (dir / file).string()));
    f << text;
    if (!f) throw ConfigError(fmt::format("write to '{}' failed", (dir / file).string()));
  };
  write(name + ".csv", out.results.to_string());
  write(name + "_sweep.csv", out.sweep.to_string());
  write(name + "_manifest.json", manifest.to_json());
}

}  // namespace ntnsim
