#pragma once

// Experiment families, each producing long-format CSV tables.
//
// Altitudes in the tables are above ground (h - R_e) unless the column
// says otherwise. Every cell reuses the run seed, so a cell's numbers do
// not depend on which other cells share the grid.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ntnsim/config.hpp"
#include "ntnsim/errest.hpp"

namespace ntnsim {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ExperimentKind { OptAltSweep, ErrVsAltitude, HeatmapBeam, HeatmapArea, CaseStudy };

inline constexpr ExperimentKind kAllExperiments[] = {ExperimentKind::OptAltSweep, ExperimentKind::ErrVsAltitude,
                                                     ExperimentKind::HeatmapBeam, ExperimentKind::HeatmapArea,
                                                     ExperimentKind::CaseStudy};

/// CLI spelling: opt-alt, err-alt, heatmap-beam, heatmap-area, case-study.
std::string_view experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view name);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

struct ExperimentOutput {
  ExperimentKind kind = ExperimentKind::OptAltSweep;
  CsvTable results;  // one row per grid cell and metric
  CsvTable sweep;    // one row per evaluated planar altitude
};

inline const std::vector<std::string> kSweepHeader{"seed", "mode", "metric", "h_s_km", "theta_max_rad",
                                                   "h_p_km", "rel_err", "n_in", "n_out", "excluded"};

/// Estimation settings for one cell. The channel is attached only for
/// system metrics, picked by the platform altitude.
EstimationConfig estimation_for(const RunConfig& cfg, double altitude_km, double theta_max, MetricId metric);

/// CSM on LoS caps; reports the swept optimum next to the closed form.
ExperimentOutput run_opt_alt_sweep(const RunConfig& cfg);
/// Minimum relative error per (h_s, metric) on LoS caps.
ExperimentOutput run_err_vs_altitude(const RunConfig& cfg);
/// Minimum relative error per (h_s, region, metric) over beam angles or
/// cap areas.
ExperimentOutput run_heatmap(const RunConfig& cfg, ExperimentKind kind);
/// HAP and LEO platforms over the case-study beam angles.
ExperimentOutput run_case_study(const RunConfig& cfg);

ExperimentOutput run_experiment(ExperimentKind kind, const RunConfig& cfg);

struct RunManifest {
  std::string experiment;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version{kVersion};
  std::string started_utc;
  std::string finished_utc;
  std::size_t result_rows = 0;
  std::size_t sweep_rows = 0;

  std::string to_json() const;
};

std::string utc_timestamp();

/// Writes <name>.csv, <name>_sweep.csv and <name>_manifest.json under dir.
void write_experiment(const std::filesystem::path& dir, const ExperimentOutput& out, const RunManifest& manifest);

}  // namespace ntnsim
